"""
Riemann-Poisson bialgebras from abelian subalgebras
===================================================

An even-dimensional abelian subalgebra inside the orthogonal subalgebra,
together with any nondegenerate 2-form, gives a Yang-Baxter solution.  The
dual algebra is then flat, and the pair satisfies the reduced compatibility
condition.
"""

import numpy as np

from riemann_lie import PreconditionError, bialgebra_report, catalog
from riemann_lie.poisson_yb import SymplecticSubspace
from riemann_lie.subspace import Subspace

J = np.array([[0.0, 1.0], [-1.0, 0.0]])

###############################################################################
# Compact case: u(2) with its bi-invariant metric and the torus
# ``span(e0, e3)``.  The algebra itself is curved but its dual is flat.

u2 = catalog.named("u2")
rep = bialgebra_report(u2.alg, u2.metric, SymplecticSubspace.from_basis(np.eye(4)[:, [0, 3]], J))
print("u(2): certified", rep.certified, " algebra flat", rep.primal.is_riemann_lie,
      " dual flat", rep.dual_report.is_riemann_lie)

###############################################################################
# Flat case: a random flat algebra with a plane inside its rotation factor.
# Both the algebra and its dual are flat.

inst = catalog.random_flat(3, 4, seed=1)
rep = bialgebra_report(inst.alg, inst.metric, inst.symplectic)
print("flat: certified", rep.certified, " both flat", rep.double_riemann_lie)
print("  reduced compatibility defect", rep.rpl_defect)

###############################################################################
# so(3) has no two-dimensional abelian subalgebra, so every plane is rejected
# before any certification is attempted.

so3 = catalog.named("so3")
try:
    bialgebra_report(so3.alg, so3.metric, SymplecticSubspace(Subspace(np.eye(3)[:, :2]), J))
except PreconditionError as exc:
    print("so(3):", exc)
