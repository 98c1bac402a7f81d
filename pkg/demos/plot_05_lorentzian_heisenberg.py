"""
A flat Lorentzian metric on the Heisenberg algebra
==================================================

No Riemannian metric on the Heisenberg algebra is flat, but indefinite ones
can be.  A randomized search over signature (2, 1) finds one, and a closed
form is checked directly.
"""

import numpy as np

from riemann_lie import ScalarProduct, catalog, classify, riemann_lie_defect
from riemann_lie.catalog import search_metric

heis = catalog.named("heisenberg3").alg

###############################################################################
# Search over rotated diagonal metrics with bounded eigenvalues.

for signature in [(3, 0), (2, 1)]:
    res = search_metric(heis, signature, seed=0, trials=5)
    print(signature, "found:", res.found, " best defect:", f"{res.best_defect:.2e}")
    if res.found:
        print(np.round(res.witness.gram, 4))

###############################################################################
# A closed-form witness: ``e1`` and ``e3`` are null and paired, ``e2`` is a
# unit vector.

g = ScalarProduct(np.array([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]))
print("signature", g.signature, " defect", riemann_lie_defect(heis, g))

###############################################################################
# For indefinite metrics the four characterizations need not agree, so the
# classifier reports them separately.

rep = classify(heis, g)
print(rep.banner)
print(rep.verdicts)
