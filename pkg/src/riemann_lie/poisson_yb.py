"""Bivectors, the classical Yang-Baxter equation and Riemann-Poisson bialgebras.

Conventions
-----------
* Covectors are column vectors of dual coordinates.  The coadjoint action is
  the plain transpose, ``(ad*_x alpha)(v) = alpha([x, v])``.
* A bivector ``r`` is an antisymmetric matrix; the induced map on covectors is
  ``r(alpha) = r @ alpha`` and the pairing is ``r(alpha, beta) = alpha @ r @ beta``.
* A subspace with 2-form ``(B, Omega)`` corresponds to ``r = -B Omega^{-1} B^T``.

With these choices the identity
``gamma(r([alpha, beta]_r) - [r alpha, r beta]) = -[r, r](alpha, beta, gamma)``
holds exactly; flipping either sign breaks it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ._errors import InputError, NumericalInconsistencyError, PreconditionError
from .lie_core import (
    LieAlgebra,
    ad_matrix,
    jacobi_defect,
    structure_scale,
    subspace_flags,
)
from .metric_geometry import (
    Connection,
    ScalarProduct,
    FlatnessReport,
    classify,
    curvature_defect,
    levi_civita,
    orthogonal_subalgebra,
    riemann_lie_defect,
)
from .subspace import DEFAULT_TOL, Subspace


@dataclass(frozen=True)
class Bivector:
    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise InputError(f"bivector matrix must be square, got shape {r.shape}")
        if not np.array_equal(r, -r.T):
            raise InputError("bivector matrix is not antisymmetric")
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @classmethod
    def wedge(cls, n: int, i: int, j: int, value: float = 1.0) -> Bivector:
        """``value * e_i ^ e_j``."""
        r = np.zeros((n, n))
        r[i, j], r[j, i] = value, -value
        return cls(r)

    @classmethod
    def from_entries(cls, n: int, entries) -> Bivector:
        """Build from ``(i, j, v)`` triples with ``i < j``."""
        r = np.zeros((n, n))
        for i, j, v in entries:
            if not (0 <= i < j < n):
                raise InputError(f"bivector entry ({i}, {j}) must satisfy 0 <= i < j < {n}")
            r[i, j], r[j, i] = v, -v
        return cls(r)

    @property
    def ambient_dim(self) -> int:
        return self.r.shape[0]

    def __call__(self, alpha) -> np.ndarray:
        return self.r @ np.asarray(alpha, dtype=float)

    def pair(self, alpha, beta) -> float:
        return float(np.asarray(alpha) @ self.r @ np.asarray(beta))

    def image(self, tol: float = DEFAULT_TOL) -> Subspace:
        return Subspace.span(self.r, tol)

    def __repr__(self) -> str:
        return f"Bivector(rank={np.linalg.matrix_rank(self.r)}, ambient_dim={self.ambient_dim})"


@dataclass(frozen=True)
class SymplecticSubspace:
    """Subspace ``S`` (basis ``B``) with a nondegenerate 2-form, ``omega[k, l] = w(b_k, b_l)``."""

    s: Subspace
    omega: np.ndarray
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        om = np.array(self.omega, dtype=float)
        p = self.s.dim
        if om.shape != (p, p):
            raise InputError(f"omega must be {p}x{p}, got {om.shape}")
        if p < 2 or p % 2:
            raise InputError(f"symplectic subspace needs even dimension >= 2, got {p}")
        if not np.array_equal(om, -om.T):
            raise InputError("omega is not antisymmetric")
        sv = np.linalg.svd(om, compute_uv=False)
        if sv[-1] <= self.tol * sv[0]:
            raise InputError("omega is degenerate")
        om.setflags(write=False)
        object.__setattr__(self, "omega", om)

    @classmethod
    def from_basis(cls, basis, omega, tol: float = DEFAULT_TOL) -> SymplecticSubspace:
        return cls(Subspace(np.asarray(basis, dtype=float), tol=tol), omega, tol=tol)

    @property
    def basis(self) -> np.ndarray:
        return self.s.basis

    @property
    def dim(self) -> int:
        return self.s.dim

    def form(self, u, v) -> float:
        """Evaluate the 2-form on two vectors of ``S``."""
        x, y = self.s.coordinates(u), self.s.coordinates(v)
        return float(x @ self.omega @ y)

    def omega_in(self, basis) -> np.ndarray:
        """Matrix of the 2-form in another basis of the same subspace."""
        m = self.s.coordinates(np.asarray(basis, dtype=float))
        return m.T @ self.omega @ m

    def sharp(self) -> np.ndarray:
        """Inverse of ``u -> w(u, .)`` in basis coordinates."""
        return np.linalg.inv(self.omega.T)


def _check_dims(alg: LieAlgebra, r: Bivector):
    if r.ambient_dim != alg.dim:
        raise InputError(f"bivector has dim {r.ambient_dim}, algebra has dim {alg.dim}")


def coadjoint(alg: LieAlgebra, x) -> np.ndarray:
    """Matrix of ``ad*_x`` on dual coordinates."""
    return ad_matrix(alg, x).T


def bivector_scale(alg: LieAlgebra, r: Bivector) -> float:
    return structure_scale(alg) * float(np.max(np.abs(r.r), initial=0.0)) ** 2


def _threshold(alg: LieAlgebra, r: Bivector, tol: float) -> float:
    return tol * (1.0 + bivector_scale(alg, r))


def _image_brackets(alg: LieAlgebra, r: Bivector) -> np.ndarray:
    # out[j, k, :] = [r(eps_j), r(eps_k)]
    return np.einsum("aj,bk,abl->jkl", r.r, r.r, alg.c)


def schouten_tensor(alg: LieAlgebra, r: Bivector) -> np.ndarray:
    """``T[i, j, k] = [r, r](eps_i, eps_j, eps_k)``."""
    _check_dims(alg, r)
    b = _image_brackets(alg, r)
    # alpha([r b, r g]) + beta([r g, r a]) + gamma([r a, r b])
    return (np.einsum("jki->ijk", b) + np.einsum("kij->ijk", b) + b)


def schouten_defect(alg: LieAlgebra, r: Bivector) -> tuple[np.ndarray, float]:
    t = schouten_tensor(alg, r)
    return t, float(np.max(np.abs(t), initial=0.0))


def dual_bracket(alg: LieAlgebra, r: Bivector) -> LieAlgebra:
    """The bracket ``[a, b]_r = ad*_{r b} a - ad*_{r a} b`` as structure constants on the dual basis."""
    _check_dims(alg, r)
    # coad[j] is the matrix of ad*_{r eps_j}
    coad = np.einsum("aj,ali->jli", r.r, alg.c)
    cd = np.einsum("jli->ijl", coad) - np.einsum("ilj->ijl", coad)
    return LieAlgebra.antisymmetrized(cd, name=f"dual({alg.name})" if alg.name else "dual")


def subspace_form_to_r(alg: LieAlgebra, sf: SymplecticSubspace) -> Bivector:
    if sf.s.ambient_dim != alg.dim:
        raise InputError(f"subspace lives in R^{sf.s.ambient_dim}, algebra has dim {alg.dim}")
    b = sf.basis
    try:
        inv = np.linalg.inv(sf.omega)
    except np.linalg.LinAlgError as exc:
        raise InputError("omega is singular") from exc
    r = -b @ inv @ b.T
    return Bivector(0.5 * (r - r.T))


def r_to_subspace_form(alg: LieAlgebra, r: Bivector, tol: float = DEFAULT_TOL) -> SymplecticSubspace:
    """Image of ``r`` with its induced 2-form.

    The basis is ``r(eps_k)`` for a maximal independent set of dual basis
    vectors chosen by pivoted QR, so that ``omega[k, l] = r[k, l]`` on those
    indices.
    """
    _check_dims(alg, r)
    big = float(np.max(np.abs(r.r), initial=0.0))
    if big == 0.0:
        raise InputError("bivector is zero; its image is empty")
    _, rr, piv = scipy.linalg.qr(r.r, pivoting=True)
    diag = np.abs(np.diag(rr))
    rank = int(np.sum(diag > tol * diag[0]))
    keep = np.sort(piv[:rank])
    basis = r.r[:, keep]
    omega = r.r[np.ix_(keep, keep)]
    return SymplecticSubspace(Subspace(basis, tol=tol), omega, tol=tol)


def delta_omega_tensor(alg: LieAlgebra, sf: SymplecticSubspace, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``dw(b_i, b_j, b_k)`` over basis triples of a subalgebra ``S``."""
    b = sf.basis
    p = b.shape[1]
    brackets = np.einsum("ia,jb,ijk->abk", b, b, alg.c)
    scale = max(structure_scale(alg), 1.0)
    for x in range(p):
        for y in range(x + 1, p):
            if not sf.s.contains(brackets[x, y], tol * scale):
                raise PreconditionError(
                    f"S is not a subalgebra: [b_{x}, b_{y}] = {np.round(brackets[x, y], 12)} lies outside S"
                )
    coords = sf.s.coordinates(brackets.reshape(p * p, -1).T).T.reshape(p, p, p)
    # w(b_i, [b_j, b_k]) = omega[i, :] @ coords[j, k]
    w = np.einsum("il,jkl->ijk", sf.omega, coords)
    return w + np.einsum("jki->ijk", w) + np.einsum("kij->ijk", w)


def delta_omega_defect(alg: LieAlgebra, sf: SymplecticSubspace, tol: float = DEFAULT_TOL) -> float:
    return float(np.max(np.abs(delta_omega_tensor(alg, sf, tol)), initial=0.0))


def morphism_identity_residual(alg: LieAlgebra, r: Bivector) -> float:
    """Residual of ``gamma(r([a,b]_r) - [r a, r b]) + [r,r](a,b,gamma)`` over dual basis triples."""
    dual = dual_bracket(alg, r)
    morph = np.einsum("lm,ijm->ijl", r.r, dual.c) - _image_brackets(alg, r)
    return float(np.max(np.abs(morph + schouten_tensor(alg, r)), initial=0.0))


def morphism_defect(alg: LieAlgebra, r: Bivector) -> float:
    """Failure of ``r: (G*, [,]_r) -> G`` to be a Lie algebra morphism."""
    dual = dual_bracket(alg, r)
    morph = np.einsum("lm,ijm->ijl", r.r, dual.c) - _image_brackets(alg, r)
    return float(np.max(np.abs(morph), initial=0.0))


def delta_omega_identity_residual(alg: LieAlgebra, r: Bivector, tol: float = DEFAULT_TOL) -> float:
    """Residual of ``[r,r](a,b,g) = dw_r(r a, r b, r g)``; requires ``S_r`` to be a subalgebra.

    With the pairing ``r(a, b) = a @ r @ b`` the 2-form satisfies
    ``w_r(r a, r b) = r(a, b)``, hence ``w_r(r a, [r b, r g]) = a([r b, r g])``
    and the identity carries a plus sign.  The opposite pairing
    ``r(a, b) = b(r a)`` negates ``w_r`` and turns it into
    ``[r,r] = -dw_r(r., r., r.)``.
    """
    sf = r_to_subspace_form(alg, r, tol)
    dw = delta_omega_tensor(alg, sf, tol)
    m = sf.s.coordinates(r.r)  # coordinates of r(eps_i) in the S_r basis
    pulled = np.einsum("abc,ai,bj,ck->ijk", dw, m, m, m)
    return float(np.max(np.abs(schouten_tensor(alg, r) - pulled), initial=0.0))


@dataclass
class YangBaxterReport:
    """Three equivalent descriptions of Yang-Baxter solutions, evaluated independently."""

    schouten_norm: float
    morphism_defect: float
    s_r_is_subalgebra: bool
    delta_omega_defect: float | None
    morphism_identity_residual: float
    delta_omega_identity_residual: float | None
    threshold: float
    verdicts: dict[str, bool]

    @property
    def consistent(self) -> bool:
        return len(set(self.verdicts.values())) == 1


def yang_baxter_report(alg: LieAlgebra, r: Bivector, tol: float = DEFAULT_TOL) -> YangBaxterReport:
    thr = _threshold(alg, r, tol)
    _, norm = schouten_defect(alg, r)
    morph = morphism_defect(alg, r)
    morph_res = morphism_identity_residual(alg, r)
    if morph_res > thr:
        raise NumericalInconsistencyError(f"Schouten/morphism identity residual {morph_res:.3e}")
    dw_thr = thr
    if not np.any(r.r):
        sub, dw, dw_res = True, 0.0, 0.0
    else:
        sf = r_to_subspace_form(alg, r, tol)
        dw_thr = tol * (1.0 + structure_scale(alg) * float(np.max(np.abs(sf.omega))))
        sub = subspace_flags(alg, sf.s, tol).is_subalgebra
        dw = dw_res = None
        if sub:
            dw = delta_omega_defect(alg, sf, tol)
            dw_res = delta_omega_identity_residual(alg, r, tol)
            if dw_res > thr * (1.0 + np.linalg.cond(sf.omega)):
                raise NumericalInconsistencyError(f"Schouten/delta-omega identity residual {dw_res:.3e}")
    verdicts = {
        "yang_baxter": norm <= thr,
        "morphism": morph <= thr,
        "symplectic_subalgebra": bool(sub and dw <= dw_thr),
    }
    return YangBaxterReport(norm, morph, bool(sub), dw, morph_res, dw_res, thr, verdicts)


def _require_yang_baxter(alg: LieAlgebra, r: Bivector, tol: float):
    _, norm = schouten_defect(alg, r)
    if norm > _threshold(alg, r, tol):
        raise PreconditionError(
            f"dual bracket is not a Lie bracket: Schouten bracket [r,r] has norm {norm:.3e}"
        )


def dual_levi_civita(alg: LieAlgebra, metric: ScalarProduct, r: Bivector,
                     tol: float = DEFAULT_TOL) -> Connection:
    """Levi-Civita connection of the dual algebra with the dual scalar product."""
    _require_yang_baxter(alg, r, tol)
    return levi_civita(dual_bracket(alg, r), metric.dual(), tol)


@dataclass
class DualConnectionCheck:
    holds: bool
    s_r_in_s_metric: bool
    deviation: float
    dual_curvature: float
    dual_rl_defect: float

    @property
    def consistent(self) -> bool:
        return self.holds == self.s_r_in_s_metric


def dual_connection_check(alg: LieAlgebra, metric: ScalarProduct, r: Bivector,
               tol: float = DEFAULT_TOL) -> DualConnectionCheck:
    """Compare the dual connection with ``-ad*_{r(alpha)}`` and test ``S_r`` inside ``S_<,>``."""
    conn = dual_levi_civita(alg, metric, r, tol)
    dual = dual_bracket(alg, r)
    dmetric = metric.dual()
    # predicted[i, j, :] = -ad*_{r eps_i} eps_j
    predicted = -np.einsum("ai,akj->ijk", r.r, alg.c)
    deviation = float(np.max(np.abs(conn.a - predicted), initial=0.0))
    dscale = float(np.max(np.abs(dual.c), initial=0.0)) * float(np.max(np.abs(dmetric.gram)))
    holds = deviation <= tol * (1.0 + dscale)
    if np.any(r.r):
        contained = orthogonal_subalgebra(alg, metric, tol).contains_subspace(r.image(tol))
    else:
        contained = True
    curv = curvature_defect(dual, dmetric, tol)
    rl = riemann_lie_defect(dual, dmetric, tol)
    return DualConnectionCheck(holds, contained, deviation, curv, rl)


def image_abelian_check(alg: LieAlgebra, metric: ScalarProduct, r: Bivector,
                 tol: float = DEFAULT_TOL) -> bool:
    """Whether ``S_r`` is abelian; raises unless ``r`` solves Yang-Baxter with ``S_r`` inside ``S_<,>``."""
    _require_yang_baxter(alg, r, tol)
    if not np.any(r.r):
        return True
    image = r.image(tol)
    if not orthogonal_subalgebra(alg, metric, tol).contains_subspace(image):
        raise PreconditionError("S_r is not contained in the orthogonal subalgebra")
    return subspace_flags(alg, image, tol).is_abelian


def rpl_compatibility_tensor(alg: LieAlgebra, r: Bivector) -> np.ndarray:
    """``[ad*_{r a} g, b]_r + [a, ad*_{r b} g]_r`` over dual basis triples ``(a, b, g)``."""
    dual = dual_bracket(alg, r)
    # v[i, k] = ad*_{r eps_i} eps_k
    v = np.einsum("ai,amk->ikm", r.r, alg.c)
    first = np.einsum("ikm,mjl->ijkl", v, dual.c)
    second = np.einsum("jkm,iml->ijkl", v, dual.c)
    return first + second


def rpl_compatibility_defect(alg: LieAlgebra, metric: ScalarProduct, r: Bivector,
                             tol: float = DEFAULT_TOL) -> float:
    _require_yang_baxter(alg, r, tol)
    return float(np.max(np.abs(rpl_compatibility_tensor(alg, r)), initial=0.0))


@dataclass
class BialgebraReport:
    hypotheses: dict[str, bool]
    r: Bivector
    schouten_norm: float
    dual: LieAlgebra
    dual_jacobi: float
    dual_connection: DualConnectionCheck
    s_r_abelian: bool
    rpl_defect: float
    primal: FlatnessReport
    dual_report: FlatnessReport
    threshold: float

    @property
    def certified(self) -> bool:
        t = self.threshold
        return (
            all(self.hypotheses.values())
            and self.schouten_norm <= t
            and self.dual_jacobi <= t
            and self.dual_connection.holds
            and self.dual_connection.s_r_in_s_metric
            and self.dual_connection.dual_curvature <= t
            and self.dual_connection.dual_rl_defect <= t
            and self.rpl_defect <= t
            and self.s_r_abelian
        )

    @property
    def double_riemann_lie(self) -> bool:
        """Both the algebra and its dual are Riemann-Lie."""
        return self.primal.is_riemann_lie and self.dual_report.is_riemann_lie


def check_bialgebra_hypotheses(alg: LieAlgebra, metric: ScalarProduct, sf: SymplecticSubspace,
                               tol: float = DEFAULT_TOL) -> dict[str, bool]:
    flags = subspace_flags(alg, sf.s, tol)
    return {
        "S abelian": flags.is_abelian,
        "S even-dimensional": sf.dim % 2 == 0 and sf.dim >= 2,
        "S inside orthogonal subalgebra": orthogonal_subalgebra(alg, metric, tol).contains_subspace(sf.s),
    }


def bialgebra_report(alg: LieAlgebra, metric: ScalarProduct, sf: SymplecticSubspace,
                     tol: float = DEFAULT_TOL) -> BialgebraReport:
    """Certify the Riemann-Poisson structure built from an abelian symplectic ``S``."""
    hyp = check_bialgebra_hypotheses(alg, metric, sf, tol)
    failed = [name for name, ok in hyp.items() if not ok]
    if failed:
        raise PreconditionError("hypothesis failed: " + ", ".join(failed))
    r = subspace_form_to_r(alg, sf)
    thr = _threshold(alg, r, tol)
    _, norm = schouten_defect(alg, r)
    if norm > thr:
        raise NumericalInconsistencyError(f"abelian S produced a non-Yang-Baxter r (norm {norm:.3e})")
    dual = dual_bracket(alg, r)
    check = dual_connection_check(alg, metric, r, tol)
    abelian = image_abelian_check(alg, metric, r, tol)
    rpl = rpl_compatibility_defect(alg, metric, r, tol)
    return BialgebraReport(
        hypotheses=hyp,
        r=r,
        schouten_norm=norm,
        dual=dual,
        dual_jacobi=jacobi_defect(dual),
        dual_connection=check,
        s_r_abelian=abelian,
        rpl_defect=rpl,
        primal=classify(alg, metric, tol),
        dual_report=classify(dual, metric.dual(), tol),
        threshold=thr,
    )
