"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line (shown in the terminal summary and,
with ``-s``, inline) before asserting, so a failing criterion is still
reported.  Tolerances written as ``tol * scale`` are applied as
``tol * (1 + scale)`` so that instances with vanishing brackets keep a
nonzero floor.
"""
import json

import numpy as np
import pytest

from riemann_lie import catalog, cli, fileformat
from riemann_lie.lie_core import center, derived_algebra, jacobi_defect, subspace_flags
from riemann_lie.metric_geometry import (
    ScalarProduct,
    _adjoint_formula_connection,
    _koszul_connection,
    classify,
    d_operator,
    derived_perp,
    levi_civita,
    orthogonal_subalgebra,
    riemann_lie_defect,
    scale,
)
from riemann_lie.poisson_yb import (
    Bivector,
    SymplecticSubspace,
    bialgebra_report,
    bivector_scale,
    morphism_identity_residual,
    delta_omega_identity_residual,
    yang_baxter_report,
    r_to_subspace_form,
    subspace_form_to_r,
)
from riemann_lie.subspace import Subspace

pytestmark = pytest.mark.acceptance

J = np.array([[0.0, 1.0], [-1.0, 0.0]])


def report(record, number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    record(line)


def flat_instances():
    out = []
    for seed in range(50):
        rng = np.random.default_rng(1000 + seed)
        out.append(catalog.random_flat(int(rng.integers(1, 4)), int(rng.integers(2, 7)), seed))
    return out


def non_flat_instances():
    out = []
    for name in ("so3", "heisenberg3", "aff1"):
        alg = catalog.named(name).alg
        for seed in range(20):
            out.append(catalog.Instance(alg, catalog.random_metric(alg.dim, seed), label=name, seed=seed))
    return out


def test_criterion_1_connection_consistency(record):
    worst_gap = worst_torsion = worst_skew = 0.0
    failures = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        alg = catalog.random_lie_algebra(n, seed)
        metric = catalog.random_metric(n, seed + 10_000)
        thr = 1e-9 * (1 + scale(alg, metric))
        gap = np.abs(_koszul_connection(alg, metric) - _adjoint_formula_connection(alg, metric)).max()
        conn = levi_civita(alg, metric)
        tor, skew = conn.torsion_defect(alg), conn.skew_defect(metric)
        worst_gap = max(worst_gap, gap / thr)
        worst_torsion = max(worst_torsion, tor / thr)
        worst_skew = max(worst_skew, skew / thr)
        failures += not (gap <= thr and tor <= thr and skew <= thr)
    ok = failures == 0
    report(record, 1, ok, f"100 pairs; worst gap/threshold {worst_gap:.2e}, "
                          f"torsion {worst_torsion:.2e}, skew {worst_skew:.2e}")
    assert ok


def test_criterion_2_flatness_equivalence(record):
    bad = []
    worst = 0.0
    for inst in flat_instances():
        rep = classify(inst.alg, inst.metric)
        thr = 1e-8 * (1 + scale(inst.alg, inst.metric))
        defects = [rep.defects[k] for k in ("riemann_lie", "parallel_dtheta", "flat")]
        worst = max(worst, max(defects) / thr)
        if not (all(rep.verdicts.values()) and max(defects) <= thr and rep.consistent):
            bad.append(inst.label)
    for inst in non_flat_instances():
        rep = classify(inst.alg, inst.metric)
        if any(rep.verdicts.values()) or not rep.consistent:
            bad.append(f"{inst.label}/{inst.seed}")
    ok = not bad
    report(record, 2, ok, f"110 instances; worst flat defect/threshold {worst:.2e}; failures {bad[:5]}")
    assert ok


def test_criterion_3_structure_of_flat_instances(record):
    bad = []
    for inst in flat_instances():
        alg, metric = inst.alg, inst.metric
        thr = 1e-9 * (1 + scale(alg, metric))
        s = orthogonal_subalgebra(alg, metric)
        dperp = derived_perp(alg, metric)
        zperp = center(alg).orthogonal_complement(metric.gram)
        checks = {
            "S abelian": subspace_flags(alg, s).is_abelian,
            "S = derived perp": s.projector_distance(dperp) <= 1e-8,
            "D vanishes on derived perp": all(
                np.abs(d_operator(alg, metric, u)).max() <= thr for u in dperp.orthonormal().T),
            "center perp is an ideal": subspace_flags(alg, zperp).is_ideal,
            "center perp contains derived": zperp.contains_subspace(derived_algebra(alg)),
        }
        bad += [f"{inst.label}/{inst.seed}: {k}" for k, v in checks.items() if not v]
    pool = flat_instances() + non_flat_instances()
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        inst = pool[int(rng.integers(len(pool)))]
        u = rng.standard_normal(inst.dim)
        u /= np.linalg.norm(u)
        d = d_operator(inst.alg, inst.metric, u)
        dtu = inst.metric.dual_gram @ d.T @ inst.metric.gram @ u
        worst = max(worst, np.abs(dtu).max() / (1e-9 * (1 + scale(inst.alg, inst.metric))))
    if worst > 1:
        bad.append(f"D_u^t u exceeds threshold by {worst:.2e}")
    ok = not bad
    report(record, 3, ok, f"50 flat instances x 5 properties, 100 vectors (worst |D_u^t u|/threshold "
                          f"{worst:.2e}); failures {bad[:5]}")
    assert ok


def test_criterion_4_schouten_identities(record):
    worst_morph = worst_dw = 0.0
    yb_count = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        alg = catalog.random_lie_algebra(n, seed)
        r = catalog.random_bivector(n, seed + 1)
        yb_count += yang_baxter_report(alg, r).verdicts["yang_baxter"]
        worst_morph = max(worst_morph, morphism_identity_residual(alg, r) / (1e-9 * (1 + bivector_scale(alg, r))))
    subalgebra_ok = True
    for seed in range(50):
        rng = np.random.default_rng(500 + seed)
        n = 2 * int(rng.integers(1, 4))
        alg = catalog.random_lie_algebra(n, 500 + seed)
        sf = SymplecticSubspace(Subspace.full(n), catalog.random_symplectic_form(n, rng))
        r = subspace_form_to_r(alg, sf)
        subalgebra_ok &= subspace_flags(alg, r_to_subspace_form(alg, r).s).is_subalgebra
        worst_dw = max(worst_dw, delta_omega_identity_residual(alg, r) / (1e-9 * (1 + bivector_scale(alg, r))))
    ok = worst_morph <= 1 and worst_dw <= 1 and subalgebra_ok
    report(record, 4, ok, f"morphism identity worst residual/threshold {worst_morph:.2e} over 100 pairs "
                          f"({100 - yb_count} not Yang-Baxter); delta-omega identity {worst_dw:.2e} over 50 pairs")
    assert ok


def _pipeline_failures(alg, metric, sf):
    rep = bialgebra_report(alg, metric, sf)
    values = {
        "schouten": rep.schouten_norm,
        "dual jacobi": rep.dual_jacobi,
        "dual connection deviation": rep.dual_connection.deviation,
        "dual curvature": rep.dual_connection.dual_curvature,
        "dual riemann-lie": rep.dual_connection.dual_rl_defect,
        "reduced compatibility": rep.rpl_defect,
    }
    bad = [k for k, v in values.items() if not v <= 1e-9]
    if not rep.dual_connection.holds:
        bad.append("dual connection formula")
    if not rep.s_r_abelian:
        bad.append("S_r abelian")
    if not rep.certified:
        bad.append("certified")
    return bad, max(values.values())


def test_criterion_5_yang_baxter_pipeline(record):
    u2 = catalog.named("u2")
    bad, worst = _pipeline_failures(u2.alg, u2.metric, SymplecticSubspace.from_basis(np.eye(4)[:, [0, 3]], J))
    failures = [f"u2: {b}" for b in bad]
    for seed in range(20):
        rng = np.random.default_rng(2000 + seed)
        inst = catalog.random_flat(int(rng.integers(2, 4)), int(rng.integers(2, 7)), seed)
        factor = inst.symplectic
        block = SymplecticSubspace.from_basis(factor.basis[:, :2], factor.omega[:2, :2])
        b, w = _pipeline_failures(inst.alg, inst.metric, block)
        failures += [f"{inst.label}/{seed}: {x}" for x in b]
        worst = max(worst, w)
    ok = not failures
    report(record, 5, ok, f"u2 + 20 flat instances; largest defect {worst:.2e}; failures {failures[:5]}")
    assert ok


def test_criterion_6_negative_controls(record, tmp_path, capsys):
    heis = catalog.named("heisenberg3").alg
    rep = yang_baxter_report(heis, Bivector.wedge(3, 0, 1))
    heis_ok = abs(rep.schouten_norm - 1.0) <= 1e-9 and not any(rep.verdicts.values())
    so3 = catalog.named("so3")
    rng = np.random.default_rng(6)
    rejected = 0
    for k in range(50):
        basis = np.linalg.qr(rng.standard_normal((3, 2)))[0]
        inst = catalog.Instance(so3.alg, so3.metric, symplectic=SymplecticSubspace.from_basis(basis, J),
                                label="so3")
        path = tmp_path / f"so3_{k}.json"
        fileformat.dump(inst, path)
        code = cli.main(["bialgebra", str(path), "--json"])
        out = json.loads(capsys.readouterr().out)
        rejected += code == 1 and "hypothesis failed" in (out.get("error") or "")
    ok = heis_ok and rejected == 50
    report(record, 6, ok, f"heisenberg Schouten norm {rep.schouten_norm:.12f}, verdicts {rep.verdicts}; "
                          f"so3 rejected {rejected}/50")
    assert ok


def test_criterion_7_round_trip(record):
    worst_r = worst_s = worst_w = 0.0
    for seed in range(50):
        rng = np.random.default_rng(7000 + seed)
        p = int(rng.choice([2, 4]))
        n = int(rng.integers(p, 7))
        basis = np.linalg.qr(rng.standard_normal((n, p)))[0]
        sf = SymplecticSubspace.from_basis(basis, catalog.random_symplectic_form(p, rng))
        alg = catalog.random_lie_algebra(n, seed)
        r = subspace_form_to_r(alg, sf)
        back = r_to_subspace_form(alg, r)
        worst_s = max(worst_s, back.s.projector_distance(sf.s))
        worst_w = max(worst_w, np.abs(back.omega_in(sf.basis) - sf.omega).max())
        worst_r = max(worst_r, np.abs(subspace_form_to_r(alg, back).r - r.r).max())
    ok = max(worst_r, worst_s, worst_w) <= 1e-9
    report(record, 7, ok, f"50 subspaces; r error {worst_r:.2e}, subspace error {worst_s:.2e}, "
                          f"omega error {worst_w:.2e}")
    assert ok


def test_criterion_8_lorentzian_heisenberg_search(record):
    heis = catalog.named("heisenberg3").alg
    res = catalog.search_metric(heis, (2, 1), seed=0, trials=10)
    if res.found:
        g = np.array2string(res.witness.gram, precision=6, separator=", ").replace("\n", "")
        detail = (f"found signature-(2,1) metric with riemann_lie_defect {res.best_defect:.2e}; "
                  f"witness gram {g}")
    else:
        detail = f"no metric found in {res.trials} trials; best defect {res.best_defect:.2e}"
    report(record, 8, True, "(exploratory, non-blocking) " + detail)
    # exploratory: the outcome is reported, never asserted
    if res.found:
        assert riemann_lie_defect(heis, ScalarProduct(res.witness.gram)) <= 1e-8
