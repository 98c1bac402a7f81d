"""Scalar products on Lie algebras and the geometry of left-invariant metrics.

All tensors use the basis of the underlying :class:`LieAlgebra`.  The
connection tensor ``a[i, j, k]`` is the k-th coordinate of ``A_{e_i} e_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._errors import InputError, NumericalInconsistencyError
from .lie_core import (
    LieAlgebra,
    ad_matrices,
    ad_matrix,
    derived_algebra,
    structure_scale,
    subspace_flags,
)
from .subspace import DEFAULT_TOL, Subspace

PSEUDO_RIEMANNIAN_BANNER = "pseudo-Riemannian: equivalences not guaranteed"


@dataclass(frozen=True)
class ScalarProduct:
    """Symmetric nondegenerate bilinear form, stored as its Gram matrix."""

    gram: np.ndarray
    tol: float = field(default=DEFAULT_TOL, compare=False)
    dual_gram: np.ndarray = field(init=False, repr=False, compare=False)
    signature: tuple[int, int] = field(init=False, compare=False)

    def __post_init__(self):
        g = np.array(self.gram, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InputError(f"gram matrix must be square, got shape {g.shape}")
        if not np.array_equal(g, g.T):
            raise InputError("gram matrix is not symmetric")
        eig = np.linalg.eigvalsh(g) if g.size else np.zeros(0)
        big = float(np.max(np.abs(eig), initial=0.0))
        if g.size and float(np.min(np.abs(eig))) <= self.tol * big:
            raise InputError("gram matrix is degenerate")
        dual = np.linalg.inv(g) if g.size else g.copy()
        if g.size and np.max(np.abs(g @ dual - np.eye(len(g)))) > 1e3 * self.tol:
            raise InputError("gram matrix is too ill-conditioned to invert reliably")
        dual = 0.5 * (dual + dual.T)
        g.setflags(write=False)
        dual.setflags(write=False)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "dual_gram", dual)
        object.__setattr__(self, "signature", (int(np.sum(eig > 0)), int(np.sum(eig < 0))))

    @classmethod
    def identity(cls, n: int) -> ScalarProduct:
        return cls(np.eye(n))

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @property
    def riemannian(self) -> bool:
        return self.signature[1] == 0

    def dual(self) -> ScalarProduct:
        """The induced scalar product on the dual space."""
        return ScalarProduct(self.dual_gram, tol=self.tol)

    def pullback(self, t: np.ndarray) -> ScalarProduct:
        """Gram matrix in the basis given by the columns of ``t``."""
        t = np.asarray(t, dtype=float)
        g = t.T @ self.gram @ t
        return ScalarProduct(0.5 * (g + g.T), tol=self.tol)

    def inner(self, u, v) -> float:
        return float(np.asarray(u) @ self.gram @ np.asarray(v))

    def sharp(self, alpha) -> np.ndarray:
        """Vector metrically dual to the covector ``alpha``."""
        return self.dual_gram @ np.asarray(alpha, dtype=float)


@dataclass(frozen=True)
class Connection:
    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def matrix(self, u) -> np.ndarray:
        """Matrix of ``v -> A_u v``."""
        return np.einsum("i,ijk->kj", np.asarray(u, dtype=float), self.a)

    def apply(self, u, v) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(u, dtype=float), np.asarray(v, dtype=float), self.a)

    def torsion_defect(self, alg: LieAlgebra) -> float:
        t = self.a - self.a.transpose(1, 0, 2) - alg.c
        return float(np.max(np.abs(t), initial=0.0))

    def skew_defect(self, metric: ScalarProduct) -> float:
        mats = self.a.transpose(0, 2, 1)
        g = metric.gram
        s = np.einsum("kl,ilj->ikj", g, mats)
        return float(np.max(np.abs(s + s.transpose(0, 2, 1)), initial=0.0))


def _check_pair(alg: LieAlgebra, metric: ScalarProduct):
    if metric.dim != alg.dim:
        raise InputError(f"metric has dim {metric.dim}, algebra has dim {alg.dim}")


def scale(alg: LieAlgebra, metric: ScalarProduct) -> float:
    """Magnitude used to make defect thresholds input-scale invariant."""
    return structure_scale(alg) * float(np.max(np.abs(metric.gram), initial=0.0))


def threshold(alg: LieAlgebra, metric: ScalarProduct, tol: float = DEFAULT_TOL) -> float:
    return tol * (1.0 + scale(alg, metric))


def adjoint_ad(alg: LieAlgebra, metric: ScalarProduct, u) -> np.ndarray:
    """Metric adjoint of ``ad_u``: ``<ad^t_u v, w> = <v, ad_u w>``."""
    _check_pair(alg, metric)
    return metric.dual_gram @ ad_matrix(alg, u).T @ metric.gram


def _adjoint_ads(alg: LieAlgebra, metric: ScalarProduct) -> np.ndarray:
    ads = ad_matrices(alg)
    return np.einsum("kl,iml,mj->ikj", metric.dual_gram, ads, metric.gram)


def _koszul_connection(alg: LieAlgebra, metric: ScalarProduct) -> np.ndarray:
    # 2<A_i e_j, e_l> = <[e_i,e_j],e_l> + <[e_l,e_i],e_j> + <[e_l,e_j],e_i>
    low = np.einsum("ijk,kl->ijl", alg.c, metric.gram)
    rhs = low + np.einsum("lij->ijl", low) + np.einsum("lji->ijl", low)
    return 0.5 * np.einsum("ijl,lk->ijk", rhs, metric.dual_gram)


def _adjoint_formula_connection(alg: LieAlgebra, metric: ScalarProduct) -> np.ndarray:
    # A_u v = 1/2 [u,v] - 1/2 (ad^t_u v + ad^t_v u)
    adt = _adjoint_ads(alg, metric)
    sym = adt.transpose(0, 2, 1)  # sym[i, j, k] = (ad^t_{e_i} e_j)_k
    return 0.5 * alg.c - 0.5 * (sym + sym.transpose(1, 0, 2))


def levi_civita(alg: LieAlgebra, metric: ScalarProduct, tol: float = DEFAULT_TOL) -> Connection:
    """Infinitesimal Levi-Civita connection, cross-checked against the Koszul solve."""
    _check_pair(alg, metric)
    a = _adjoint_formula_connection(alg, metric)
    b = _koszul_connection(alg, metric)
    gap = float(np.max(np.abs(a - b), initial=0.0))
    cond = float(np.max(np.abs(metric.dual_gram), initial=0.0))
    if gap > threshold(alg, metric, tol) * max(cond, 1.0):
        raise NumericalInconsistencyError(f"connection formulas disagree by {gap:.3e}")
    return Connection(a)


def orthogonal_subalgebra(alg: LieAlgebra, metric: ScalarProduct,
                          tol: float = DEFAULT_TOL) -> Subspace:
    """Vectors ``u`` whose ``ad_u`` is skew-adjoint."""
    _check_pair(alg, metric)
    n = alg.dim
    sym = ad_matrices(alg) + _adjoint_ads(alg, metric)
    return Subspace.kernel(sym.reshape(n, n * n).T, tol)


def _rl_tensor(alg: LieAlgebra, conn: Connection) -> np.ndarray:
    # E[i, j, k] = [A_{e_i} e_j, e_k] + [e_i, A_{e_k} e_j]
    c, a = alg.c, conn.a
    first = np.einsum("ijm,mkl->ijkl", a, c)
    second = np.einsum("kjm,iml->ijkl", a, c)
    return first + second


def _dtheta_tensor(alg: LieAlgebra, conn: Connection) -> np.ndarray:
    # F[i, j, k] = [e_i, [e_j, e_k]] - [A_{e_i} e_j, e_k] - [e_j, A_{e_i} e_k]
    c, a = alg.c, conn.a
    nested = np.einsum("jkm,iml->ijkl", c, c)
    first = np.einsum("ijm,mkl->ijkl", a, c)
    second = np.einsum("ikm,jml->ijkl", a, c)
    return nested - first - second


def _max_abs(t: np.ndarray) -> float:
    return float(np.max(np.abs(t), initial=0.0))


def riemann_lie_defect(alg: LieAlgebra, metric: ScalarProduct, tol: float = DEFAULT_TOL) -> float:
    """Size of ``[A_u v, w] + [u, A_w v]`` over basis triples; zero for Riemann-Lie algebras."""
    conn = levi_civita(alg, metric, tol)
    rl = _rl_tensor(alg, conn)
    dtheta = _dtheta_tensor(alg, conn)
    # given Jacobi the two tensors satisfy rl[u, v, w] = -dtheta[v, u, w]
    gap = _max_abs(rl + dtheta.transpose(1, 0, 2, 3))
    if gap > 10 * threshold(alg, metric, tol) * max(1.0, scale(alg, metric)):
        raise NumericalInconsistencyError(
            f"the two Riemann-Lie defect forms disagree by {gap:.3e}; is the bracket a Lie bracket?"
        )
    return _max_abs(rl)


def parallel_dtheta_defect(alg: LieAlgebra, metric: ScalarProduct, tol: float = DEFAULT_TOL) -> float:
    """Identity-fiber size of the covariant derivative of the Maurer-Cartan differential."""
    return _max_abs(_dtheta_tensor(alg, levi_civita(alg, metric, tol)))


def curvature_tensor(alg: LieAlgebra, conn: Connection) -> np.ndarray:
    """``R[i, j, k, :] = A_{[e_i,e_j]} e_k - (A_i A_j e_k - A_j A_i e_k)``."""
    c, a = alg.c, conn.a
    first = np.einsum("ijm,mkl->ijkl", c, a)
    aa = np.einsum("jkm,iml->ijkl", a, a)
    return first - (aa - aa.transpose(1, 0, 2, 3))


def curvature_defect(alg: LieAlgebra, metric: ScalarProduct, tol: float = DEFAULT_TOL) -> float:
    return _max_abs(curvature_tensor(alg, levi_civita(alg, metric, tol)))


def d_operator(alg: LieAlgebra, metric: ScalarProduct, u, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Matrix of ``D_u = ad_u - A_u``."""
    conn = levi_civita(alg, metric, tol)
    d = ad_matrix(alg, u) - conn.matrix(u)
    dt_u = metric.dual_gram @ d.T @ metric.gram @ np.asarray(u, dtype=float)
    if _max_abs(dt_u) > threshold(alg, metric, tol) * (1.0 + float(np.dot(u, u))):
        raise NumericalInconsistencyError(f"D_u^t(u) = {dt_u} does not vanish")
    return d


def d_operator_adjoint(alg: LieAlgebra, metric: ScalarProduct, u, tol: float = DEFAULT_TOL) -> np.ndarray:
    d = d_operator(alg, metric, u, tol)
    return metric.dual_gram @ d.T @ metric.gram


def derived_perp(alg: LieAlgebra, metric: ScalarProduct, tol: float = DEFAULT_TOL) -> Subspace:
    """Common kernel of all ``ad^t_u``, cross-checked two ways."""
    _check_pair(alg, metric)
    n = alg.dim
    adt = _adjoint_ads(alg, metric)
    result = Subspace.kernel(adt.reshape(n * n, n), tol)

    via_complement = derived_algebra(alg, tol).orthogonal_complement(metric.gram)
    conn = levi_civita(alg, metric, tol)
    # u -> D_u - D_u^t is linear in u; stack it over u = e_i
    d = ad_matrices(alg) - conn.a.transpose(0, 2, 1)
    dt = np.einsum("kl,iml,mj->ikj", metric.dual_gram, d, metric.gram)
    via_d = Subspace.kernel((d - dt).reshape(n, n * n).T, tol)
    for label, other in (("orthogonal complement of the derived algebra", via_complement),
                         ("{u : D_u^t = D_u}", via_d)):
        if not result.equals(other, max(tol, 1e-8)):
            raise NumericalInconsistencyError(f"common kernel of ad^t disagrees with {label}")
    return result


@dataclass(frozen=True)
class MilnorDecomposition:
    ok: bool
    s: Subspace
    u: Subspace
    failed: str | None = None
    defect: float = 0.0


def milnor_decomposition(alg: LieAlgebra, metric: ScalarProduct,
                         tol: float = DEFAULT_TOL) -> MilnorDecomposition:
    """Try to split the algebra orthogonally as abelian subalgebra plus abelian ideal.

    The first summand is always the orthogonal subalgebra; ``failed`` names the
    first clause that does not hold.
    """
    s = orthogonal_subalgebra(alg, metric, tol)
    u = s.orthogonal_complement(metric.gram)
    defect = _milnor_defect(alg, s, u)
    checks = (
        ("S abelian", lambda: subspace_flags(alg, s, tol).is_abelian),
        ("S + U spans", lambda: s.dim + u.dim == alg.dim and (s + u).dim == alg.dim),
        ("U ideal", lambda: subspace_flags(alg, u, tol).is_ideal),
        ("U abelian", lambda: subspace_flags(alg, u, tol).is_abelian),
    )
    for clause, check in checks:
        if not check():
            return MilnorDecomposition(False, s, u, clause, defect)
    return MilnorDecomposition(True, s, u, None, defect)


def _milnor_defect(alg: LieAlgebra, s: Subspace, u: Subspace) -> float:
    """Largest violation among [S,S] = 0, [U,U] = 0 and [G,U] inside U."""
    qs, qu = s.orthonormal(), u.orthonormal()
    ss = np.einsum("ia,jb,ijk->abk", qs, qs, alg.c)
    uu = np.einsum("ia,jb,ijk->abk", qu, qu, alg.c)
    gu = np.einsum("ja,ijk->iak", qu, alg.c).reshape(-1, alg.dim)
    leak = gu - gu @ u.projector() if gu.size else gu
    return max(_max_abs(ss), _max_abs(uu), _max_abs(leak))


CONDITIONS = ("riemann_lie", "parallel_dtheta", "flat", "milnor")


@dataclass
class FlatnessReport:
    """Outcome of the four computable equivalent characterizations of flatness."""

    defects: dict[str, float]
    verdicts: dict[str, bool]
    threshold: float
    decomposition: MilnorDecomposition
    riemannian: bool
    consistent: bool
    poisson_dual: str = "not computed: equivalent to riemann_lie"
    banner: str | None = None

    @property
    def is_riemann_lie(self) -> bool:
        return self.verdicts["riemann_lie"]


def classify(alg: LieAlgebra, metric: ScalarProduct, tol: float = DEFAULT_TOL) -> FlatnessReport:
    _check_pair(alg, metric)
    thr = threshold(alg, metric, tol)
    defects = {
        "riemann_lie": riemann_lie_defect(alg, metric, tol),
        "parallel_dtheta": parallel_dtheta_defect(alg, metric, tol),
        "flat": curvature_defect(alg, metric, tol),
    }
    verdicts = {k: v <= thr for k, v in defects.items()}
    dec = milnor_decomposition(alg, metric, tol)
    defects["milnor"] = dec.defect
    verdicts["milnor"] = dec.ok
    agree = len(set(verdicts.values())) == 1
    riem = metric.riemannian
    return FlatnessReport(
        defects=defects,
        verdicts=verdicts,
        threshold=thr,
        decomposition=dec,
        riemannian=riem,
        # equivalence is only guaranteed for definite metrics
        consistent=agree if riem else True,
        banner=None if riem else PSEUDO_RIEMANNIAN_BANNER,
    )
