"""JSON-ready report trees for the command-line front end."""
from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .catalog import Instance
from .lie_core import center, derived_algebra, jacobi_defect, killing_form
from .metric_geometry import FlatnessReport, classify, derived_perp
from .poisson_yb import BialgebraReport, Bivector, YangBaxterReport
from .subspace import Subspace

SCHEMA_VERSION = "1.0"


def load_schema() -> dict:
    text = resources.files("riemann_lie").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def check(defect, holds: bool, threshold: float | None = None, **extra) -> dict:
    out = {"defect": None if defect is None else float(defect), "holds": bool(holds)}
    if threshold is not None:
        out["threshold"] = float(threshold)
    out.update(extra)
    return out


def basis_list(s: Subspace) -> list:
    """Basis vectors as a list of rows (one row per vector)."""
    return [[float(x) for x in col] for col in s.basis.T]


def bivector_entries(r: Bivector) -> list:
    n = r.ambient_dim
    return [{"i": i, "j": j, "v": float(r.r[i, j])}
            for i in range(n) for j in range(i + 1, n) if r.r[i, j] != 0]


def echo(inst: Instance) -> dict:
    out = {"name": inst.label or inst.alg.name, "dim": inst.alg.dim}
    if inst.metric is not None:
        out["metric_signature"] = list(inst.metric.signature)
    return out


def header(command: str, inst: Instance, tol: float) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "input": echo(inst), "tol": tol}


def flatness_section(rep: FlatnessReport) -> dict:
    conds = {
        name: check(rep.defects[name], rep.verdicts[name], rep.threshold)
        for name in ("riemann_lie", "parallel_dtheta", "flat")
    }
    dec = rep.decomposition
    conds["milnor"] = check(dec.defect, dec.ok, rep.threshold, failed_clause=dec.failed)
    return {
        "riemann_lie": rep.is_riemann_lie,
        "conditions": conds,
        "poisson_dual": {"status": rep.poisson_dual},
        "consistent": rep.consistent,
        "riemannian": rep.riemannian,
        "banner": rep.banner,
        "decomposition": {
            "orthogonal_subalgebra": basis_list(dec.s),
            "complement": basis_list(dec.u),
            "valid": dec.ok,
        },
    }


def analyze_report(inst: Instance, tol: float) -> dict:
    alg, metric = inst.alg, inst.metric
    rep = classify(alg, metric, tol)
    kf = killing_form(alg, tol)
    out = header("analyze", inst, tol)
    out.update(flatness_section(rep))
    out["structure"] = {
        "jacobi_defect": jacobi_defect(alg),
        "center": basis_list(center(alg, tol)),
        "derived_algebra": basis_list(derived_algebra(alg, tol)),
        "derived_perp": basis_list(derived_perp(alg, metric, tol)),
        "killing_form": {"matrix": kf.matrix.tolist(), "verdict": kf.verdict},
    }
    return out


def yang_baxter_section(rep: YangBaxterReport) -> dict:
    return {
        "yang_baxter": check(rep.schouten_norm, rep.verdicts["yang_baxter"], rep.threshold),
        "morphism": check(rep.morphism_defect, rep.verdicts["morphism"], rep.threshold),
        "symplectic_subalgebra": check(rep.delta_omega_defect, rep.verdicts["symplectic_subalgebra"],
                                       is_subalgebra=rep.s_r_is_subalgebra),
        "morphism_identity_residual": rep.morphism_identity_residual,
        "delta_omega_identity_residual": rep.delta_omega_identity_residual,
        "consistent": rep.consistent,
    }


def bialgebra_section(rep: BialgebraReport) -> dict:
    t = rep.threshold
    eq = rep.dual_connection
    return {
        "hypotheses": {k: bool(v) for k, v in rep.hypotheses.items()},
        "certified": rep.certified,
        "bivector": bivector_entries(rep.r),
        "yang_baxter": check(rep.schouten_norm, rep.schouten_norm <= t, t),
        "dual_jacobi": check(rep.dual_jacobi, rep.dual_jacobi <= t, t),
        "dual_connection_is_minus_coadjoint": check(eq.deviation, eq.holds, t),
        "s_r_inside_orthogonal_subalgebra": eq.s_r_in_s_metric,
        "dual_curvature": check(eq.dual_curvature, eq.dual_curvature <= t, t),
        "dual_riemann_lie": check(eq.dual_rl_defect, eq.dual_rl_defect <= t, t),
        "poisson_metric_compatibility": check(rep.rpl_defect, rep.rpl_defect <= t, t),
        "s_r_abelian": rep.s_r_abelian,
        "primal": flatness_section(rep.primal),
        "dual": flatness_section(rep.dual_report),
        "double_riemann_lie": rep.double_riemann_lie,
    }


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays for ``json.dumps``."""
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    return obj
