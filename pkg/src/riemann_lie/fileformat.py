"""Instance files: one algebra (plus optional metric, bivector, subspace) per JSON document.

Brackets are listed only for ``i < j`` so antisymmetry cannot be mis-specified::

    {
      "format": "riemann-lie-instance/1",
      "name": "heisenberg3",
      "dim": 3,
      "brackets": [{"i": 0, "j": 1, "c": {"2": 1.0}}],
      "metric": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
      "bivector": [{"i": 0, "j": 2, "v": 1.0}],
      "subspace": {"basis": [[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]],
                   "omega": [[0.0, 1.0], [-1.0, 0.0]]}
    }

``metric``, ``bivector`` and ``subspace`` are optional.  ``basis`` is
``dim x p`` (one column per basis vector).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .catalog import Instance
from .lie_core import LieAlgebra
from .metric_geometry import ScalarProduct
from .poisson_yb import Bivector, SymplecticSubspace
from .subspace import Subspace

FORMAT_TAG = "riemann-lie-instance/1"


class ParseError(ValueError):
    """The file is not a well-formed instance document."""


@dataclass
class InstanceFile:
    """Raw, unvalidated file contents as arrays."""

    name: str
    dim: int
    c: np.ndarray
    metric: np.ndarray | None = None
    bivector: np.ndarray | None = None
    basis: np.ndarray | None = None
    omega: np.ndarray | None = None

    def algebra(self) -> LieAlgebra:
        return LieAlgebra(self.c, name=self.name)

    def to_instance(self) -> Instance:
        metric = ScalarProduct(self.metric) if self.metric is not None else None
        biv = Bivector(self.bivector) if self.bivector is not None else None
        sf = None
        if self.basis is not None:
            sf = SymplecticSubspace(Subspace(self.basis), self.omega)
        return Instance(self.algebra(), metric, biv, sf, label=self.name)


def _matrix(value, rows: int, cols: int | None, field: str) -> np.ndarray:
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise ParseError(f"{field}: expected a list of rows")
    widths = {len(row) for row in value}
    if len(value) != rows or len(widths) > 1 or (cols is not None and widths and widths != {cols}):
        raise ParseError(f"{field}: expected a rectangular {rows}x{cols if cols is not None else 'p'} array")
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{field}: non-numeric entry") from exc
    return arr.reshape(rows, -1) if rows else np.zeros((0, cols or 0))


def _index(value, dim: int, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < dim:
        raise ParseError(f"{field}: index {value!r} out of range for dim {dim}")
    return value


def parse(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("format", FORMAT_TAG) != FORMAT_TAG:
        raise ParseError(f"unsupported format tag {doc.get('format')!r}")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError(f"dim: expected a positive integer, got {dim!r}")
    c = np.zeros((dim, dim, dim))
    for n, entry in enumerate(doc.get("brackets", [])):
        field = f"brackets[{n}]"
        if not isinstance(entry, dict) or not {"i", "j", "c"} <= entry.keys():
            raise ParseError(f"{field}: expected keys i, j, c")
        i, j = _index(entry["i"], dim, field + ".i"), _index(entry["j"], dim, field + ".j")
        if i >= j:
            raise ParseError(f"{field}: brackets must satisfy i < j, got ({i}, {j})")
        if np.any(c[i, j]):
            raise ParseError(f"{field}: duplicate bracket ({i}, {j})")
        if not isinstance(entry["c"], dict):
            raise ParseError(f"{field}.c: expected a map basis-index -> value")
        for key, val in entry["c"].items():
            try:
                k = int(key)
            except ValueError:
                raise ParseError(f"{field}.c: bad basis index {key!r}") from None
            _index(k, dim, f"{field}.c")
            if isinstance(val, bool) or not isinstance(val, (int, float)):
                raise ParseError(f"{field}.c[{key}]: expected a number")
            c[i, j, k] = val
            c[j, i, k] = -val
    out = InstanceFile(name=str(doc.get("name", "")), dim=dim, c=c)
    if doc.get("metric") is not None:
        out.metric = _matrix(doc["metric"], dim, dim, "metric")
    if doc.get("bivector") is not None:
        r = np.zeros((dim, dim))
        for n, entry in enumerate(doc["bivector"]):
            field = f"bivector[{n}]"
            if not isinstance(entry, dict) or not {"i", "j", "v"} <= entry.keys():
                raise ParseError(f"{field}: expected keys i, j, v")
            i, j = _index(entry["i"], dim, field + ".i"), _index(entry["j"], dim, field + ".j")
            if i >= j:
                raise ParseError(f"{field}: entries must satisfy i < j, got ({i}, {j})")
            v = entry["v"]
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"{field}.v: expected a number")
            r[i, j], r[j, i] = v, -v
        out.bivector = r
    if doc.get("subspace") is not None:
        sub = doc["subspace"]
        if not isinstance(sub, dict) or not {"basis", "omega"} <= sub.keys():
            raise ParseError("subspace: expected keys basis, omega")
        out.basis = _matrix(sub["basis"], dim, None, "subspace.basis")
        p = out.basis.shape[1]
        out.omega = _matrix(sub["omega"], p, p, "subspace.omega")
    return out


def load(path: str | Path) -> InstanceFile:
    return parse(Path(path).read_text(encoding="utf-8"))


def _num(x: float) -> float:
    # normalise -0.0 so that canonical output is stable
    x = float(x)
    return 0.0 if x == 0 else x


def _rows(a: np.ndarray) -> list:
    return [[_num(x) for x in row] for row in np.asarray(a)]


def to_document(inst: Instance) -> dict:
    alg = inst.alg
    n = alg.dim
    brackets = []
    for i in range(n):
        for j in range(i + 1, n):
            comps = {str(k): _num(alg.c[i, j, k]) for k in range(n) if alg.c[i, j, k] != 0}
            if comps:
                brackets.append({"i": i, "j": j, "c": comps})
    doc = {"format": FORMAT_TAG, "name": inst.label or alg.name, "dim": n, "brackets": brackets}
    if inst.metric is not None:
        doc["metric"] = _rows(inst.metric.gram)
    if inst.bivector is not None:
        r = inst.bivector.r
        doc["bivector"] = [{"i": i, "j": j, "v": _num(r[i, j])}
                           for i in range(n) for j in range(i + 1, n) if r[i, j] != 0]
    if inst.symplectic is not None:
        doc["subspace"] = {"basis": _rows(inst.symplectic.basis),
                           "omega": _rows(inst.symplectic.omega)}
    return doc


def dumps(inst: Instance) -> str:
    return json.dumps(to_document(inst), indent=2) + "\n"


def dump(inst: Instance, path: str | Path):
    Path(path).write_text(dumps(inst), encoding="utf-8")
