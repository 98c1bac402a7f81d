"""Named example algebras and seeded random instance generators.

Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so an
identical ``(parameters, seed)`` pair reproduces an instance bit for bit on
any platform running the same numpy version.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._errors import InputError
from .lie_core import LieAlgebra, change_basis, direct_sum, semidirect_flat
from .metric_geometry import ScalarProduct
from .poisson_yb import Bivector, SymplecticSubspace, subspace_form_to_r
from .subspace import Subspace


@dataclass(frozen=True)
class Instance:
    alg: LieAlgebra
    metric: ScalarProduct | None = None
    bivector: Bivector | None = None
    symplectic: SymplecticSubspace | None = None
    label: str = ""
    seed: int | None = None

    @property
    def dim(self) -> int:
        return self.alg.dim


def _so3() -> LieAlgebra:
    return LieAlgebra.from_brackets(
        3, {(0, 1): {2: 1.0}, (1, 2): {0: 1.0}, (0, 2): {1: -1.0}}, name="so3")


def _named_algebra(name: str) -> LieAlgebra:
    if name.startswith("direct_sum:"):
        parts = name[len("direct_sum:"):].split("+")
        if len(parts) < 2 or not all(parts):
            raise InputError(f"direct_sum needs at least two summands, got {name!r}")
        alg = direct_sum(*(_named_algebra(p) for p in parts))
        return LieAlgebra(alg.c, name=name)
    if name.startswith("abelian:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad abelian dimension in {name!r}") from None
        if n < 1:
            raise InputError(f"abelian dimension must be positive, got {n}")
        return LieAlgebra.abelian(n)
    if name == "heisenberg3":
        return LieAlgebra.from_brackets(3, {(0, 1): {2: 1.0}}, name=name)
    if name == "so3":
        return _so3()
    if name == "aff1":
        return LieAlgebra.from_brackets(2, {(0, 1): {1: 1.0}}, name=name)
    if name == "e2":
        alg = semidirect_flat(1, 2, [[1.0]])
        return LieAlgebra(alg.c, basis_names=alg.basis_names, name=name)
    if name == "u2":
        alg = direct_sum(LieAlgebra.abelian(1), _so3())
        return LieAlgebra(alg.c, name=name)
    raise InputError(f"unknown catalog entry {name!r}")


NAMES = ("abelian:n", "heisenberg3", "so3", "aff1", "e2", "u2", "direct_sum:a+b")


def named(name: str) -> Instance:
    """Catalog algebra with the identity metric."""
    alg = _named_algebra(name)
    return Instance(alg, ScalarProduct.identity(alg.dim), label=name)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix: QR of a Gaussian matrix with sign-fixed diagonal."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.where(np.diag(r) < 0, -1.0, 1.0)


def random_metric(n: int, seed: int, signature: tuple[int, int] | None = None) -> ScalarProduct:
    if signature is None:
        signature = (n, 0)
    n_plus, n_minus = signature
    if n_plus < 0 or n_minus < 0 or n_plus + n_minus != n:
        raise InputError(f"signature {signature} does not add up to dimension {n}")
    rng = np.random.default_rng(seed)
    q = random_orthogonal(n, rng)
    d = rng.uniform(0.5, 2.0, size=n) * np.r_[np.ones(n_plus), -np.ones(n_minus)]
    g = q.T @ np.diag(d) @ q
    return ScalarProduct(0.5 * (g + g.T))


def random_symplectic_form(p: int, rng: np.random.Generator) -> np.ndarray:
    """Nondegenerate ``p x p`` 2-form whose leading 2x2 block is itself nondegenerate."""
    if p % 2:
        raise InputError(f"2-forms are nondegenerate only in even dimension, got {p}")
    om = np.zeros((p, p))
    for k in range(0, p, 2):
        w = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        om[k, k + 1], om[k + 1, k] = w, -w
    # congruence by a block upper-triangular matrix keeps the leading block intact
    t = np.eye(p)
    for k in range(0, p, 2):
        t[k:k + 2, k + 2:] = rng.uniform(-1, 1, size=(2, p - k - 2))
    om = t.T @ om @ t
    return 0.5 * (om - om.T)


def random_bivector(n: int, seed: int, support: Subspace | None = None) -> Bivector:
    rng = np.random.default_rng(seed)
    if support is None:
        m = rng.standard_normal((n, n))
        return Bivector(m - m.T)
    if support.ambient_dim != n:
        raise InputError(f"support lives in R^{support.ambient_dim}, expected R^{n}")
    if support.dim % 2:
        raise InputError(f"support must be even-dimensional, got {support.dim}")
    if support.dim == 0:
        return Bivector(np.zeros((n, n)))
    sf = SymplecticSubspace(support, random_symplectic_form(support.dim, rng))
    return subspace_form_to_r(LieAlgebra.abelian(n), sf)


def random_flat(p: int, q: int, seed: int) -> Instance:
    """Flat instance ``R^p`` acting on ``R^q`` by rotations, with identity metric.

    When ``p >= 2`` a random even-dimensional symplectic subspace of the
    acting factor is attached; its first two basis vectors carry a
    nondegenerate 2x2 block.
    """
    if p < 1 or q < 2:
        raise InputError(f"random_flat needs p >= 1 and q >= 2, got p={p}, q={q}")
    rng = np.random.default_rng(seed)
    m = q // 2
    freqs = rng.uniform(-2.0, 2.0, size=(p, m))
    alg = semidirect_flat(p, q, freqs, q - 2 * m)
    sf = None
    if p >= 2:
        k = 2 * int(rng.integers(1, p // 2 + 1))
        mix = rng.standard_normal((p, k))
        basis = np.zeros((p + q, k))
        basis[:p] = np.linalg.qr(mix)[0]
        sf = SymplecticSubspace.from_basis(basis, random_symplectic_form(k, rng))
    return Instance(alg, ScalarProduct.identity(p + q), symplectic=sf,
                    label=f"random_flat({p},{q})", seed=seed)


def random_lie_algebra(n: int, seed: int) -> LieAlgebra:
    """A random valid Lie algebra of dimension ``n`` in a random basis.

    Draws one of a few families that are Lie algebras by construction (a
    derivation extension of an abelian ideal, a catalog algebra padded by an
    abelian summand, or a commuting-rotation semidirect product) and applies a
    random change of basis.
    """
    if n < 1:
        raise InputError(f"dimension must be positive, got {n}")
    rng = np.random.default_rng(seed)
    kind = int(rng.integers(0, 3))
    if kind == 0 or n == 1:
        # [e_0, v] = D v on the abelian ideal spanned by e_1..e_{n-1}
        d = rng.standard_normal((n - 1, n - 1))
        c = np.zeros((n, n, n))
        c[0, 1:, 1:] = d.T
        c[1:, 0, 1:] = -d.T
        alg = LieAlgebra(c)
    elif kind == 1:
        pool = [a for a in ("heisenberg3", "so3", "aff1", "e2", "u2") if _named_algebra(a).dim <= n]
        base = _named_algebra(str(rng.choice(pool)))
        alg = base if base.dim == n else direct_sum(base, LieAlgebra.abelian(n - base.dim))
    else:
        p = int(rng.integers(1, n))
        q = n - p
        m = q // 2
        alg = semidirect_flat(p, q, rng.uniform(-2, 2, size=(p, m)), q - 2 * m)
    t = np.eye(n) + 0.5 * rng.standard_normal((n, n))
    while abs(np.linalg.det(t)) < 0.1:
        t = np.eye(n) + 0.5 * rng.standard_normal((n, n))
    return LieAlgebra(change_basis(alg, t).c, name=f"random({n})")


@dataclass
class MetricSearchResult:
    found: bool
    best_defect: float
    witness: ScalarProduct | None
    trials: int


SEARCH_LOG_SPREAD = 3.0


def _bounded_gram(x: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """``Q^T diag(signs * exp(s)) Q`` with ``Q = expm(skew)`` and ``|s| <= SEARCH_LOG_SPREAD``."""
    from scipy.linalg import expm

    n = signs.size
    k = n * (n - 1) // 2
    skew = np.zeros((n, n))
    skew[np.triu_indices(n, 1)] = x[:k]
    q = expm(skew - skew.T)
    s = SEARCH_LOG_SPREAD * np.tanh(x[k:])
    g = q.T @ np.diag(signs * np.exp(s)) @ q
    return 0.5 * (g + g.T)


def search_metric(alg: LieAlgebra, signature: tuple[int, int], seed: int = 0, trials: int = 40,
                  target: float = 1e-8) -> MetricSearchResult:
    """Randomized search for a Riemann-Lie metric of the given signature.

    Metrics are parametrized as rotated diagonal forms whose eigenvalue
    magnitudes stay within ``exp(+-3)``, so a small defect cannot come from
    drifting toward a degenerate form.  Each trial starts at a random point and
    refines it by least squares on the defect tensor.
    """
    from scipy.optimize import least_squares

    from .metric_geometry import _rl_tensor, levi_civita, riemann_lie_defect

    n = alg.dim
    n_plus, n_minus = signature
    if n_plus < 0 or n_minus < 0 or n_plus + n_minus != n:
        raise InputError(f"signature {signature} does not add up to dimension {n}")
    signs = np.r_[np.ones(n_plus), -np.ones(n_minus)]
    rng = np.random.default_rng(seed)
    nparam = n * (n - 1) // 2 + n

    def residual(x):
        metric = ScalarProduct(_bounded_gram(x, signs))
        return _rl_tensor(alg, levi_civita(alg, metric, tol=1e-6)).ravel()

    best, best_metric = np.inf, None
    for _ in range(trials):
        x0 = rng.uniform(-np.pi, np.pi, size=nparam)
        sol = least_squares(residual, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=500)
        metric = ScalarProduct(_bounded_gram(sol.x, signs))
        value = riemann_lie_defect(alg, metric)
        if value < best:
            best, best_metric = value, metric
        if best <= target:
            break
    found = best <= target
    return MetricSearchResult(found, float(best), best_metric if found else None, trials)
