"""
Structure of a flat metric Lie algebra
======================================

For a flat instance, the orthogonal subalgebra is abelian and coincides with
the orthogonal complement of the derived algebra.  The operator
``D_u = ad_u - A_u`` vanishes there.  We check this on a random flat
instance presented in a scrambled basis.
"""

import numpy as np

from riemann_lie import catalog, center, classify, d_operator, derived_algebra, derived_perp
from riemann_lie import orthogonal_subalgebra, subspace_flags
from riemann_lie.lie_core import change_basis

###############################################################################
# Build ``R^2`` acting on ``R^4`` by commuting rotations, then move to a random
# basis.  The metric is transported with the basis change, so the geometry is
# unchanged even though every structure constant now looks generic.

inst = catalog.random_flat(2, 4, seed=5)
rng = np.random.default_rng(0)
t = np.eye(6) + 0.5 * rng.standard_normal((6, 6))
alg = change_basis(inst.alg, t)
metric = inst.metric.pullback(t)
print("flat in the new basis:", all(classify(alg, metric).verdicts.values()))

###############################################################################
# The orthogonal subalgebra versus the complement of the derived algebra.

s = orthogonal_subalgebra(alg, metric)
dperp = derived_perp(alg, metric)
print("dim S =", s.dim, " abelian:", subspace_flags(alg, s).is_abelian)
print("projector distance S vs [G,G]^perp:", s.projector_distance(dperp))

###############################################################################
# ``D_u`` on a basis of the complement of the derived algebra.

for u in dperp.orthonormal().T:
    print("max |D_u| =", np.abs(d_operator(alg, metric, u)).max())

###############################################################################
# The orthogonal complement of the center is an ideal that contains the
# derived algebra.

zperp = center(alg).orthogonal_complement(metric.gram)
print("ideal:", subspace_flags(alg, zperp).is_ideal,
      " contains [G,G]:", zperp.contains_subspace(derived_algebra(alg)))
