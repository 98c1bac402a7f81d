"""Linear subspaces of R^n with SVD-based rank decisions."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._errors import InputError

DEFAULT_TOL = 1e-9


def _rank_threshold(s: np.ndarray, tol: float) -> float:
    # relative to the largest singular value, floored at tol so that
    # round-off on an identically zero map is not mistaken for rank
    smax = float(s[0]) if s.size else 0.0
    return tol * max(smax, 1.0)


def null_space(matrix: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of ``matrix``."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    n = matrix.shape[1]
    if matrix.shape[0] == 0:
        return np.eye(n)
    _, s, vt = np.linalg.svd(matrix, full_matrices=True)
    rank = int(np.sum(s > _rank_threshold(s, tol)))
    return vt[rank:].T.copy()


def column_span(matrix: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the column space of ``matrix``."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.shape[1] == 0:
        return np.zeros((matrix.shape[0], 0))
    u, s, _ = np.linalg.svd(matrix, full_matrices=False)
    rank = int(np.sum(s > _rank_threshold(s, tol)))
    return u[:, :rank].copy()


@dataclass(frozen=True)
class Subspace:
    """Column span of a full-column-rank ``ambient_dim x p`` basis matrix.

    Bases are not canonical; compare subspaces with :meth:`equals`, which
    works on orthogonal projectors.
    """

    basis: np.ndarray
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        if b.ndim != 2:
            raise InputError(f"subspace basis must be 2-D, got shape {b.shape}")
        if b.shape[1] > 0:
            s = np.linalg.svd(b, compute_uv=False)
            if s[-1] <= self.tol * max(s[0], 1.0):
                raise InputError(
                    f"subspace basis columns are linearly dependent "
                    f"(smallest singular value {s[-1]:.3e})"
                )
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @classmethod
    def span(cls, vectors: np.ndarray, tol: float = DEFAULT_TOL) -> Subspace:
        """Span of the columns of ``vectors``, which may be dependent."""
        return cls(column_span(vectors, tol), tol=tol)

    @classmethod
    def kernel(cls, matrix: np.ndarray, tol: float = DEFAULT_TOL) -> Subspace:
        return cls(null_space(matrix, tol), tol=tol)

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(np.zeros((n, 0)))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(np.eye(n))

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def orthonormal(self) -> np.ndarray:
        if self.dim == 0:
            return np.zeros((self.ambient_dim, 0))
        q, _ = np.linalg.qr(self.basis)
        return q

    def projector(self) -> np.ndarray:
        q = self.orthonormal()
        return q @ q.T

    def distance(self, v: np.ndarray) -> float:
        v = np.asarray(v, dtype=float)
        return float(np.linalg.norm(v - self.projector() @ v))

    def contains(self, v: np.ndarray, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        v = np.asarray(v, dtype=float)
        return self.distance(v) <= tol * (1.0 + np.linalg.norm(v))

    def contains_subspace(self, other: Subspace, tol: float | None = None) -> bool:
        q = other.orthonormal()
        return all(self.contains(q[:, a], tol) for a in range(q.shape[1]))

    def projector_distance(self, other: Subspace) -> float:
        return float(np.max(np.abs(self.projector() - other.projector()), initial=0.0))

    def equals(self, other: Subspace, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return self.projector_distance(other) <= 10 * tol

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of ``v`` (or of each column of ``v``) in this basis."""
        x, *_ = np.linalg.lstsq(self.basis, np.asarray(v, dtype=float), rcond=None)
        return x

    def orthogonal_complement(self, gram: np.ndarray | None = None) -> Subspace:
        """Complement with respect to ``gram`` (Euclidean when omitted)."""
        n = self.ambient_dim
        if self.dim == 0:
            return Subspace.full(n)
        g = np.eye(n) if gram is None else np.asarray(gram, dtype=float)
        return Subspace.kernel(self.basis.T @ g, self.tol)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(np.hstack([self.basis, other.basis]), self.tol)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"
