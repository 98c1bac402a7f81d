"""Real Lie algebras given by structure constants.

Convention: ``c[i, j, k]`` is the k-th coordinate of ``[e_i, e_j]``.  The
adjoint matrix of ``u`` acts on column vectors, ``ad_matrix(alg, u) @ v ==
bracket(alg, u, v)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from ._errors import InputError
from .subspace import DEFAULT_TOL, Subspace


@dataclass(frozen=True)
class LieAlgebra:
    c: np.ndarray
    basis_names: tuple[str, ...] | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise InputError(f"structure constants must have shape (n, n, n), got {c.shape}")
        if not np.array_equal(c, -c.transpose(1, 0, 2)):
            raise InputError("structure constants are not antisymmetric in (i, j)")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        if self.basis_names is not None:
            names = tuple(self.basis_names)
            if len(names) != c.shape[0]:
                raise InputError(f"expected {c.shape[0]} basis names, got {len(names)}")
            object.__setattr__(self, "basis_names", names)

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, **kwargs) -> LieAlgebra:
        """Build from ``{(i, j): {k: value}}`` (or ``{(i, j): vector}``) with i < j."""
        c = np.zeros((dim, dim, dim))
        for (i, j), value in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim) or i == j:
                raise InputError(f"bad bracket index pair ({i}, {j}) for dim {dim}")
            if isinstance(value, dict):
                vec = np.zeros(dim)
                for k, coef in value.items():
                    if not 0 <= k < dim:
                        raise InputError(f"bracket component index {k} out of range")
                    vec[k] = coef
            else:
                vec = np.asarray(value, dtype=float)
            c[i, j] = vec
            c[j, i] = -vec
        return cls(c, **kwargs)

    @classmethod
    def abelian(cls, n: int) -> LieAlgebra:
        return cls(np.zeros((n, n, n)), name=f"abelian:{n}")

    @classmethod
    def antisymmetrized(cls, c: np.ndarray, **kwargs) -> LieAlgebra:
        """Build from an arbitrary tensor by projecting onto its antisymmetric part."""
        c = np.asarray(c, dtype=float)
        return cls(0.5 * (c - c.transpose(1, 0, 2)), **kwargs)

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"LieAlgebra({label}dim={self.dim})"


def _vector(alg: LieAlgebra, u, what: str = "vector") -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape != (alg.dim,):
        raise InputError(f"{what} has shape {u.shape}, expected ({alg.dim},)")
    return u


def bracket(alg: LieAlgebra, u, v) -> np.ndarray:
    u = _vector(alg, u, "u")
    v = _vector(alg, v, "v")
    # explicit antisymmetrization makes bracket(v, u) == -bracket(u, v) bit for bit
    forward = np.einsum("i,j,ijk->k", u, v, alg.c)
    backward = np.einsum("i,j,ijk->k", v, u, alg.c)
    return 0.5 * (forward - backward)


def ad_matrix(alg: LieAlgebra, u) -> np.ndarray:
    u = _vector(alg, u)
    return np.einsum("i,ijk->kj", u, alg.c)


def ad_matrices(alg: LieAlgebra) -> np.ndarray:
    """Stack of ``ad_{e_i}``; ``out[i] @ v == [e_i, v]``."""
    return alg.c.transpose(0, 2, 1).copy()


def jacobi_tensor(alg: LieAlgebra) -> np.ndarray:
    """``J[i, j, l, k]``: k-th coordinate of the cyclic Jacobi sum on (e_i, e_j, e_l)."""
    c = alg.c
    t = np.einsum("ijm,mlk->ijlk", c, c)
    return t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)


def jacobi_defect(alg: LieAlgebra) -> float:
    if alg.dim == 0:
        return 0.0
    return float(np.max(np.abs(jacobi_tensor(alg))))


def structure_scale(alg: LieAlgebra) -> float:
    return float(np.max(np.abs(alg.c), initial=0.0))


def center(alg: LieAlgebra, tol: float = DEFAULT_TOL) -> Subspace:
    n = alg.dim
    # u is central iff sum_i u_i c[i, j, k] = 0 for every (j, k)
    stacked = alg.c.reshape(n, n * n).T
    return Subspace.kernel(stacked, tol)


def derived_algebra(alg: LieAlgebra, tol: float = DEFAULT_TOL) -> Subspace:
    n = alg.dim
    iu, ju = np.triu_indices(n, k=1)
    brackets = alg.c[iu, ju].T
    if brackets.size == 0 or not np.any(brackets):
        return Subspace.zero(n)
    return Subspace.span(brackets, tol)


class KillingForm(NamedTuple):
    matrix: np.ndarray
    verdict: str
    eigenvalues: np.ndarray


def definiteness(sym: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[str, np.ndarray]:
    """Classify a symmetric matrix by the signs of its eigenvalues."""
    eig = np.linalg.eigvalsh(0.5 * (sym + sym.T))
    scale = float(np.max(np.abs(eig), initial=0.0))
    cut = tol * max(scale, 1.0)
    pos = int(np.sum(eig > cut))
    neg = int(np.sum(eig < -cut))
    zero = eig.size - pos - neg
    if pos == 0 and neg == 0:
        verdict = "zero"
    elif pos and neg:
        verdict = "indefinite"
    elif neg:
        verdict = "negative-definite" if zero == 0 else "negative-semidefinite"
    else:
        verdict = "positive-definite" if zero == 0 else "positive-semidefinite"
    return verdict, eig


def killing_form(alg: LieAlgebra, tol: float = DEFAULT_TOL) -> KillingForm:
    ads = ad_matrices(alg)
    b = np.einsum("iab,jba->ij", ads, ads)
    b = 0.5 * (b + b.T)
    verdict, eig = definiteness(b, tol)
    return KillingForm(b, verdict, eig)


class SubspaceFlags(NamedTuple):
    is_subalgebra: bool
    is_ideal: bool
    is_abelian: bool


def subspace_flags(alg: LieAlgebra, s: Subspace, tol: float = DEFAULT_TOL) -> SubspaceFlags:
    if s.ambient_dim != alg.dim:
        raise InputError(f"subspace lives in R^{s.ambient_dim}, algebra has dim {alg.dim}")
    q = s.orthonormal()
    p = q.shape[1]
    if p == 0:
        return SubspaceFlags(True, True, True)
    # [q_a, q_b] for all pairs; [e_i, q_a] for all i
    inner = np.einsum("ia,jb,ijk->abk", q, q, alg.c).reshape(p * p, alg.dim)
    outer = np.einsum("ja,ijk->iak", q, alg.c).reshape(alg.dim * p, alg.dim)
    scale = max(structure_scale(alg), 1.0)
    is_abelian = bool(np.max(np.abs(inner)) <= tol * scale)
    is_sub = all(s.contains(w, tol * scale) for w in inner)
    is_ideal = all(s.contains(w, tol * scale) for w in outer)
    return SubspaceFlags(is_sub, is_ideal, is_abelian)


def change_basis(alg: LieAlgebra, t: np.ndarray) -> LieAlgebra:
    """Structure constants in the basis ``f_a = sum_i t[i, a] e_i``."""
    t = np.asarray(t, dtype=float)
    if t.shape != (alg.dim, alg.dim):
        raise InputError(f"change of basis must be {alg.dim}x{alg.dim}, got {t.shape}")
    tinv = np.linalg.inv(t)
    c = np.einsum("ia,jb,ijk,dk->abd", t, t, alg.c, tinv)
    return LieAlgebra.antisymmetrized(c, name=alg.name)


def direct_sum(*algs: LieAlgebra) -> LieAlgebra:
    n = sum(a.dim for a in algs)
    c = np.zeros((n, n, n))
    off = 0
    for a in algs:
        d = a.dim
        c[off:off + d, off:off + d, off:off + d] = a.c
        off += d
    return LieAlgebra(c, name="+".join(a.name for a in algs))


def semidirect_flat(p: int, q: int, freqs: Sequence | np.ndarray | None = None,
                    fixed: int | None = None) -> LieAlgebra:
    """Abelian ``R^p`` acting on abelian ``R^q`` by commuting rotations.

    Basis order is ``(s_1..s_p, u_1..u_q)``.  Row ``a`` of ``freqs`` holds the
    rotation frequencies of ``s_a`` on the planes ``(u_1, u_2), (u_3, u_4), ...``:
    ``[s_a, u_{2m-1}] = freqs[a][m] u_{2m}`` and ``[s_a, u_{2m}] = -freqs[a][m] u_{2m-1}``.
    The trailing ``fixed`` coordinates of ``u`` are left alone.
    """
    if p < 0 or q < 0:
        raise InputError(f"p and q must be nonnegative, got p={p}, q={q}")
    if freqs is None:
        lam = np.zeros((p, 0))
    else:
        lam = np.asarray(freqs, dtype=float)
        if lam.size == 0 and lam.ndim != 2:
            lam = lam.reshape(p, -1) if p else np.zeros((0, 0))
        if lam.ndim != 2 or lam.shape[0] != p:
            raise InputError(f"freqs must have shape (p, m) with p={p}, got {lam.shape}")
    m = lam.shape[1]
    if fixed is None:
        fixed = q - 2 * m
    if fixed < 0 or q != 2 * m + fixed:
        raise InputError(f"q={q} must equal 2*{m} + fixed (fixed={fixed})")
    n = p + q
    c = np.zeros((n, n, n))
    for a in range(p):
        for blk in range(m):
            x, y = p + 2 * blk, p + 2 * blk + 1
            w = lam[a, blk]
            c[a, x, y], c[x, a, y] = w, -w
            c[a, y, x], c[y, a, x] = -w, w
    names = tuple(f"s{a + 1}" for a in range(p)) + tuple(f"u{i + 1}" for i in range(q))
    return LieAlgebra(c, basis_names=names, name=f"semidirect_flat({p},{q})")
