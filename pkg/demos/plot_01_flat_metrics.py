"""
Which metric Lie algebras are flat?
===================================

A left-invariant metric on a Lie group is flat exactly when the algebra is
Riemann-Lie.  Four independent characterizations are computed here and
compared on three small algebras.
"""

import numpy as np

from riemann_lie import catalog, classify, levi_civita, milnor_decomposition

###############################################################################
# The Euclidean motion algebra e(2): one rotation generator ``s`` acting on
# the translations ``u1, u2``.  With the identity metric every condition holds.

e2 = catalog.named("e2")
rep = classify(e2.alg, e2.metric)
for name, defect in rep.defects.items():
    print(f"e(2)  {name:16s} defect={defect:.2e} holds={rep.verdicts[name]}")

###############################################################################
# The orthogonal splitting behind flatness: an abelian subalgebra plus an
# abelian ideal.

dec = milnor_decomposition(e2.alg, e2.metric)
print("S basis:\n", dec.s.basis.T)
print("U basis:\n", dec.u.basis.T)

###############################################################################
# so(3) with its bi-invariant metric is positively curved.  The connection is
# half the bracket, and the splitting fails at its first clause.

so3 = catalog.named("so3")
conn = levi_civita(so3.alg, so3.metric)
print("A = 1/2 [ , ]:", np.allclose(conn.a, 0.5 * so3.alg.c))
rep = classify(so3.alg, so3.metric)
print("so(3) verdicts:", rep.verdicts, "failed clause:", rep.decomposition.failed)

###############################################################################
# The Heisenberg algebra admits no flat Riemannian metric.  Random metrics
# all give a clearly nonzero defect.

heis = catalog.named("heisenberg3").alg
for seed in range(3):
    metric = catalog.random_metric(3, seed)
    rep = classify(heis, metric)
    print(f"heisenberg seed {seed}: riemann_lie defect {rep.defects['riemann_lie']:.3f}, "
          f"consistent={rep.consistent}")
