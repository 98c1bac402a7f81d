"""
Bivectors and the classical Yang-Baxter equation
================================================

A bivector ``r`` solves the classical Yang-Baxter equation when its Schouten
bracket vanishes.  Three equivalent tests are compared, and the
correspondence between bivectors and subspaces with a 2-form is exercised.
"""

import numpy as np

from riemann_lie import catalog
from riemann_lie.poisson_yb import (
    Bivector,
    dual_bracket,
    yang_baxter_report,
    r_to_subspace_form,
    subspace_form_to_r,
)
from riemann_lie.lie_core import jacobi_defect

###############################################################################
# In the Heisenberg algebra the plane ``span(e1, e2)`` is not a subalgebra, so
# ``r = e1 ^ e2`` fails all three tests and its Schouten bracket has norm one.

heis = catalog.named("heisenberg3").alg
rep = yang_baxter_report(heis, Bivector.wedge(3, 0, 1))
print("Schouten norm:", rep.schouten_norm)
print("verdicts:", rep.verdicts)

###############################################################################
# In u(2) the torus ``span(e0, e3)`` is abelian.  The bivector ``e0 ^ e3``
# solves the equation, and the bracket it induces on the dual space satisfies
# Jacobi.

u2 = catalog.named("u2").alg
r = Bivector.wedge(4, 0, 3)
print("u(2) verdicts:", yang_baxter_report(u2, r).verdicts)
dual = dual_bracket(u2, r)
print("dual Jacobi defect:", jacobi_defect(dual))
print("nonzero dual brackets:", int(np.count_nonzero(dual.c)))

###############################################################################
# Passing from ``r`` to its image with the induced 2-form and back is exact.

abelian5 = catalog.named("abelian:5").alg
r = catalog.random_bivector(5, seed=2)
sf = r_to_subspace_form(abelian5, r)
back = subspace_form_to_r(abelian5, sf)
print("image dimension:", sf.dim, " round-trip error:", np.abs(back.r - r.r).max())
