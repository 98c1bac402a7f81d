"""Command-line front end.

Exit codes: 0 success, 1 domain failure (invariant violated, missing
section, failed hypothesis), 2 I/O or parse failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import catalog, fileformat, reports
from ._errors import RiemannLieError
from .lie_core import jacobi_defect, structure_scale
from .poisson_yb import (
    bialgebra_report,
    yang_baxter_report,
    r_to_subspace_form,
    schouten_defect,
    subspace_form_to_r,
    SymplecticSubspace,
)
from .subspace import DEFAULT_TOL, Subspace

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class CommandFailed(Exception):
    def __init__(self, code: int, message: str, partial: dict | None = None):
        super().__init__(message)
        self.code = code
        self.partial = partial or {}


def _load(path: str) -> fileformat.InstanceFile:
    try:
        return fileformat.load(path)
    except OSError as exc:
        raise CommandFailed(EXIT_IO, f"cannot read {path}: {exc}") from exc
    except fileformat.ParseError as exc:
        raise CommandFailed(EXIT_IO, f"{path}: {exc}") from exc


def _instance(raw: fileformat.InstanceFile):
    try:
        return raw.to_instance()
    except RiemannLieError as exc:
        raise CommandFailed(EXIT_DOMAIN, str(exc)) from exc


def run_validate(path: str, tol: float) -> dict:
    raw = _load(path)
    checks = {}
    problems = []
    try:
        alg = raw.algebra()
        jd = jacobi_defect(alg)
        ok = jd <= tol * (1.0 + structure_scale(alg) ** 2)
        checks["jacobi"] = reports.check(jd, ok)
        if not ok:
            problems.append(f"brackets: Jacobi identity fails (defect {jd:.3e})")
    except RiemannLieError as exc:
        checks["jacobi"] = reports.check(None, False)
        problems.append(f"brackets: {exc}")
    if raw.metric is not None:
        g = raw.metric
        asym = float(np.max(np.abs(g - g.T)))
        checks["metric_symmetric"] = reports.check(asym, asym == 0.0)
        if asym:
            problems.append(f"metric: not symmetric (max asymmetry {asym:.3e})")
        else:
            eig = np.linalg.eigvalsh(g)
            smallest = float(np.min(np.abs(eig)))
            nondeg = smallest > tol * float(np.max(np.abs(eig)))
            checks["metric_nondegenerate"] = reports.check(smallest, nondeg)
            if not nondeg:
                problems.append("metric: degenerate")
    if raw.bivector is not None:
        r = raw.bivector
        asym = float(np.max(np.abs(r + r.T)))
        checks["bivector_antisymmetric"] = reports.check(asym, asym == 0.0)
        if asym:
            problems.append("bivector: not antisymmetric")
    if raw.basis is not None:
        try:
            SymplecticSubspace(Subspace(raw.basis), raw.omega)
            checks["subspace"] = reports.check(None, True)
        except RiemannLieError as exc:
            checks["subspace"] = reports.check(None, False)
            problems.append(f"subspace: {exc}")
    out = {"schema_version": reports.SCHEMA_VERSION, "command": "validate",
           "input": {"name": raw.name, "dim": raw.dim}, "tol": tol, "checks": checks}
    if problems:
        raise CommandFailed(EXIT_DOMAIN, "; ".join(problems), out)
    return out


def run_analyze(path: str, tol: float) -> dict:
    inst = _instance(_load(path))
    if inst.metric is None:
        raise CommandFailed(EXIT_DOMAIN, "instance has no metric section")
    try:
        out = reports.analyze_report(inst, tol)
    except RiemannLieError as exc:
        raise CommandFailed(EXIT_DOMAIN, str(exc)) from exc
    if not out["consistent"]:
        raise CommandFailed(EXIT_DOMAIN, "equivalent conditions disagree; numerical problem", out)
    return out


def run_yb(path: str, tol: float, construct: bool) -> dict:
    inst = _instance(_load(path))
    out = reports.header("yb", inst, tol)
    out["mode"] = "construct" if construct else "check"
    try:
        if construct:
            if inst.symplectic is None:
                raise CommandFailed(EXIT_DOMAIN, "instance has no subspace section")
            r = subspace_form_to_r(inst.alg, inst.symplectic)
        else:
            if inst.bivector is None:
                raise CommandFailed(EXIT_DOMAIN, "instance has no bivector section")
            r = inst.bivector
        _, norm = schouten_defect(inst.alg, r)
        rep = yang_baxter_report(inst.alg, r, tol)
        out["bivector"] = reports.bivector_entries(r)
        out["schouten_norm"] = norm
        out["yang_baxter_criteria"] = reports.yang_baxter_section(rep)
        if np.any(r.r):
            sf = r_to_subspace_form(inst.alg, r, tol)
            out["image"] = {"basis": reports.basis_list(sf.s), "omega": sf.omega.tolist()}
    except RiemannLieError as exc:
        raise CommandFailed(EXIT_DOMAIN, str(exc), out) from exc
    if not out["yang_baxter_criteria"]["consistent"]:
        raise CommandFailed(EXIT_DOMAIN, "equivalent Yang-Baxter criteria disagree", out)
    return out


def run_bialgebra(path: str, tol: float) -> dict:
    inst = _instance(_load(path))
    if inst.metric is None or inst.symplectic is None:
        raise CommandFailed(EXIT_DOMAIN, "instance needs both metric and subspace sections")
    out = reports.header("bialgebra", inst, tol)
    try:
        rep = bialgebra_report(inst.alg, inst.metric, inst.symplectic, tol)
    except RiemannLieError as exc:
        raise CommandFailed(EXIT_DOMAIN, str(exc), out) from exc
    out["bialgebra"] = reports.bialgebra_section(rep)
    if not rep.certified:
        raise CommandFailed(EXIT_DOMAIN, "certification failed", out)
    return out


def run_generate(kind: str, args) -> str:
    try:
        if kind == "flat":
            inst = catalog.random_flat(args.p, args.q, args.seed)
        elif kind == "named":
            if not args.name:
                raise CommandFailed(EXIT_DOMAIN, "generate named needs a catalog name")
            inst = catalog.named(args.name)
        else:
            base = catalog.named(args.name or "heisenberg3")
            sig = tuple(int(x) for x in args.signature.split(",")) if args.signature else None
            metric = catalog.random_metric(base.dim, args.seed, sig)
            inst = catalog.Instance(base.alg, metric, label=base.label, seed=args.seed)
    except RiemannLieError as exc:
        raise CommandFailed(EXIT_DOMAIN, str(exc)) from exc
    except ValueError as exc:
        raise CommandFailed(EXIT_DOMAIN, f"bad parameters: {exc}") from exc
    return fileformat.dumps(inst)


def _guarded(fn, *args) -> dict:
    start = time.perf_counter()
    try:
        out = fn(*args)
        out["exit_code"] = EXIT_OK
        out["error"] = None
    except CommandFailed as exc:
        out = dict(exc.partial)
        out.setdefault("schema_version", reports.SCHEMA_VERSION)
        out["exit_code"] = exc.code
        out["error"] = str(exc)
    out["timing_s"] = time.perf_counter() - start
    return reports.to_jsonable(out)


def run_batch(paths: list[str], tol: float, workers: int | None = None) -> dict:
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves input order regardless of completion order
        children = list(pool.map(lambda p: _finish(_guarded(run_analyze, p, tol), "analyze", tol), paths))
    code = max((c["exit_code"] for c in children), default=EXIT_OK)
    return {"schema_version": reports.SCHEMA_VERSION, "command": "batch", "tol": tol,
            "reports": children, "exit_code": code}


def _finish(out: dict, command: str, tol: float) -> dict:
    out.setdefault("command", command)
    out.setdefault("tol", tol)
    return out


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def summarize(out: dict) -> str:
    """Short human-readable summary of a report."""
    lines = []
    cmd = out.get("command")
    name = out.get("input", {}).get("name", "")
    if name:
        lines.append(f"instance: {name} (dim {out['input']['dim']})")
    if cmd == "validate" and "checks" in out:
        for key, chk in out["checks"].items():
            lines.append(f"  {key:24s} {'ok' if chk['holds'] else 'FAIL'}")
    if "conditions" in out:
        lines.append(f"RIEMANN-LIE: {_yesno(out['riemann_lie'])}")
        if out.get("banner"):
            lines.append(f"  [{out['banner']}]")
        for key, chk in out["conditions"].items():
            lines.append(f"  {key:16s} holds={_yesno(chk['holds']):3s} defect={chk['defect']:.3e}")
        lines.append(f"  consistent: {_yesno(out['consistent'])}")
        kf = out.get("structure", {}).get("killing_form")
        if kf:
            lines.append(f"  Killing form: {kf['verdict']}")
    if "yang_baxter_criteria" in out:
        p = out["yang_baxter_criteria"]
        lines.append(f"Schouten norm: {out['schouten_norm']:.6g}")
        for key in ("yang_baxter", "morphism", "symplectic_subalgebra"):
            lines.append(f"  {key:22s} {_yesno(p[key]['holds'])}")
        lines.append("  r = " + ", ".join(f"{e['v']:.6g} e{e['i']}^e{e['j']}" for e in out["bivector"]))
    if "bialgebra" in out:
        b = out["bialgebra"]
        lines.append(f"CERTIFIED: {_yesno(b['certified'])}")
        lines.append(f"  algebra Riemann-Lie: {_yesno(b['primal']['riemann_lie'])}")
        lines.append(f"  dual Riemann-Lie:    {_yesno(b['dual']['riemann_lie'])}")
        lines.append(f"  both Riemann-Lie:    {_yesno(b['double_riemann_lie'])}")
    if cmd == "batch":
        for child in out["reports"]:
            lines.append(summarize(child))
    if out.get("error"):
        lines.append(f"error: {out['error']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numerical tolerance (default 1e-9)")
    common.add_argument("--json", action="store_true", help="print the machine-readable report")

    parser = argparse.ArgumentParser(prog="riemann-lie", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check file invariants")
    p.add_argument("path")
    p = sub.add_parser("analyze", parents=[common], help="flatness / Riemann-Lie classification")
    p.add_argument("path")
    p = sub.add_parser("yb", parents=[common], help="Yang-Baxter check or construction")
    p.add_argument("path")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--construct", action="store_true", help="build r from the subspace section")
    mode.add_argument("--check", action="store_true", help="check the bivector section")
    p = sub.add_parser("bialgebra", parents=[common], help="Riemann-Poisson certification")
    p.add_argument("path")
    p = sub.add_parser("batch", parents=[common], help="analyze many files concurrently")
    p.add_argument("paths", nargs="+")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("generate", help="write a reproducible instance file")
    p.add_argument("kind", choices=("flat", "metric", "named"))
    p.add_argument("name", nargs="?", help="catalog name (named, metric)")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--signature", help="n_plus,n_minus for generate metric")
    p.add_argument("--out", help="output path (default stdout)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        try:
            text = run_generate(args.kind, args)
        except CommandFailed as exc:
            print(f"error: {exc}", file=sys.stderr)
            return exc.code
        if args.out:
            try:
                Path(args.out).write_text(text, encoding="utf-8")
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_IO
        else:
            sys.stdout.write(text)
        return EXIT_OK

    if args.command == "batch":
        out = run_batch(args.paths, args.tol, args.workers)
    else:
        runners = {
            "validate": lambda: run_validate(args.path, args.tol),
            "analyze": lambda: run_analyze(args.path, args.tol),
            "yb": lambda: run_yb(args.path, args.tol, args.construct),
            "bialgebra": lambda: run_bialgebra(args.path, args.tol),
        }
        out = _finish(_guarded(runners[args.command]), args.command, args.tol)
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(summarize(out))
    return out["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
