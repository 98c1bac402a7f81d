import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from riemann_lie import InputError, catalog
from riemann_lie.lie_core import (
    LieAlgebra,
    ad_matrix,
    bracket,
    center,
    change_basis,
    derived_algebra,
    direct_sum,
    jacobi_defect,
    killing_form,
    semidirect_flat,
    subspace_flags,
)
from riemann_lie.subspace import Subspace

from conftest import basis_vec as e
from oracles import br, jacobi_max


def span(*cols):
    return Subspace.span(np.array(cols, dtype=float).T)


# --- bracket ---------------------------------------------------------------

def test_abelian_bracket_vanishes():
    alg = LieAlgebra.abelian(3)
    assert np.array_equal(bracket(alg, [1, 2, 3], [-1, 0, 4]), np.zeros(3))


def test_heisenberg_bracket(heis):
    assert np.array_equal(bracket(heis, e(3, 0), e(3, 1)), e(3, 2))


def test_so3_cyclic_bracket(so3):
    assert np.array_equal(bracket(so3, e(3, 1), e(3, 2)), e(3, 0))
    assert np.array_equal(bracket(so3, e(3, 2), e(3, 0)), e(3, 1))


def test_bracket_dimension_mismatch(heis):
    with pytest.raises(InputError):
        bracket(heis, np.ones(2), np.ones(3))


def test_structure_constants_must_be_antisymmetric():
    c = np.zeros((2, 2, 2))
    c[0, 1, 1] = 1.0
    with pytest.raises(InputError):
        LieAlgebra(c)


# --- ad ---------------------------------------------------------------------

def test_ad_of_zero_is_zero(so3):
    assert np.array_equal(ad_matrix(so3, np.zeros(3)), np.zeros((3, 3)))


def test_ad_of_central_element(heis):
    assert np.array_equal(ad_matrix(heis, e(3, 2)), np.zeros((3, 3)))


def test_so3_ad_e3_rotates(so3):
    # cyclic constants: [e3, e1] = e2 and [e3, e2] = -e1
    m = ad_matrix(so3, e(3, 2))
    assert np.allclose(m @ e(3, 0), e(3, 1))
    assert np.allclose(m @ e(3, 1), -e(3, 0))
    assert np.allclose(m @ e(3, 2), 0)


# --- Jacobi -----------------------------------------------------------------

def test_jacobi_defect_of_valid_algebras(heis):
    assert jacobi_defect(LieAlgebra.abelian(4)) == 0
    assert jacobi_defect(heis) == 0


def test_two_bracket_tensor_in_three_dims_is_lie():
    # [e0,e1] = e2, [e1,e2] = e0: the only nontrivial Jacobi triple is (e0,e1,e2)
    # and its three terms are [e0,e0], 0 and [e2,e2], so the defect is zero
    alg = LieAlgebra.from_brackets(3, {(0, 1): {2: 1.0}, (1, 2): {0: 1.0}})
    assert jacobi_defect(alg) == 0
    assert jacobi_max(alg.c) == 0


def test_jacobi_defect_broken_tensor():
    # [e0,e1] = e2, [e0,e2] = e0: J(e0,e1,e2) = [e1,[e2,e0]] = [e0,e1] = e2
    alg = LieAlgebra.from_brackets(3, {(0, 1): {2: 1.0}, (0, 2): {0: 1.0}})
    assert jacobi_defect(alg) == pytest.approx(1.0)
    assert jacobi_defect(alg) == pytest.approx(jacobi_max(alg.c))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**31 - 1))
def test_bracket_matches_loop_oracle(n, seed):
    alg = catalog.random_lie_algebra(n, seed)
    rng = np.random.default_rng(seed)
    u, v = rng.standard_normal(n), rng.standard_normal(n)
    assert np.allclose(bracket(alg, u, v), br(alg.c, u, v))
    assert np.array_equal(bracket(alg, u, v), -bracket(alg, v, u))
    assert jacobi_defect(alg) <= 1e-9 * (1 + np.abs(alg.c).max() ** 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 6), st.integers(0, 2**31 - 1))
def test_semidirect_flat_satisfies_jacobi(p, q, seed):
    rng = np.random.default_rng(seed)
    m = q // 2
    fixed = q - 2 * m
    alg = semidirect_flat(p, q, rng.uniform(-3, 3, size=(p, m)), fixed)
    assert alg.dim == p + q
    assert jacobi_defect(alg) <= 1e-9


# --- center / derived --------------------------------------------------------

def test_center_examples(heis, so3):
    assert center(LieAlgebra.abelian(3)).dim == 3
    assert center(heis).equals(span([0, 0, 1]))
    assert center(so3).dim == 0


def test_derived_examples(heis, so3):
    assert derived_algebra(LieAlgebra.abelian(3)).dim == 0
    assert derived_algebra(heis).equals(span([0, 0, 1]))
    assert derived_algebra(so3).dim == 3


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**31 - 1))
def test_center_and_derived_invariants(n, seed):
    alg = catalog.random_lie_algebra(n, seed)
    z = center(alg)
    for col in z.basis.T:
        assert np.abs(ad_matrix(alg, col)).max() <= 1e-8 * (1 + np.abs(alg.c).max())
    assert subspace_flags(alg, derived_algebra(alg)).is_ideal


# --- Killing form -------------------------------------------------------------

def test_killing_examples(heis, so3):
    kf = killing_form(LieAlgebra.abelian(3))
    assert np.array_equal(kf.matrix, np.zeros((3, 3))) and kf.verdict == "zero"
    kf = killing_form(so3)
    assert np.allclose(kf.matrix, -2 * np.eye(3)) and kf.verdict == "negative-definite"
    assert np.allclose(killing_form(heis).matrix, 0) and killing_form(heis).verdict == "zero"


def test_killing_is_symmetric_and_trace_form():
    alg = catalog.random_lie_algebra(5, 11)
    kf = killing_form(alg).matrix
    assert np.allclose(kf, kf.T)
    i, j = 1, 3
    expected = np.trace(ad_matrix(alg, e(5, i)) @ ad_matrix(alg, e(5, j)))
    assert kf[i, j] == pytest.approx(expected)


def test_killing_of_aff1_is_positive_semidefinite(aff1):
    assert killing_form(aff1).verdict == "positive-semidefinite"


# --- subspace flags ----------------------------------------------------------

def test_subspace_flags_examples(heis, so3):
    assert not subspace_flags(heis, span([1, 0, 0], [0, 1, 0])).is_subalgebra
    assert tuple(subspace_flags(heis, span([0, 0, 1]))) == (True, True, True)
    assert tuple(subspace_flags(so3, span([0, 0, 1]))) == (True, False, True)


# --- constructions ------------------------------------------------------------

def test_semidirect_flat_examples():
    alg = semidirect_flat(1, 2, [[1.0]], 0)
    assert np.array_equal(bracket(alg, e(3, 0), e(3, 1)), e(3, 2))
    assert np.array_equal(bracket(alg, e(3, 0), e(3, 2)), -e(3, 1))
    assert np.array_equal(semidirect_flat(0, 3).c, np.zeros((3, 3, 3)))
    alg = semidirect_flat(2, 2, [[1.0], [2.0]], 0)
    assert np.array_equal(bracket(alg, e(4, 1), e(4, 2)), 2 * e(4, 3))
    assert jacobi_defect(alg) == 0


def test_semidirect_flat_rejects_bad_shape():
    with pytest.raises(InputError):
        semidirect_flat(2, 4, [[1.0, 2.0]], 0)


def test_change_basis_preserves_brackets(so3):
    t = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 2.0], [1.0, 0.0, 1.0]])
    new = change_basis(so3, t)
    # [t e_i, t e_j] in old coordinates equals t applied to new structure constants
    for i in range(3):
        for j in range(3):
            lhs = bracket(so3, t[:, i], t[:, j])
            assert np.allclose(lhs, t @ new.c[i, j])


def test_direct_sum_is_block_diagonal(so3, aff1):
    alg = direct_sum(aff1, so3)
    assert alg.dim == 5
    assert np.allclose(bracket(alg, e(5, 0), e(5, 2)), 0)
    assert np.allclose(bracket(alg, e(5, 2), e(5, 3)), e(5, 4))
