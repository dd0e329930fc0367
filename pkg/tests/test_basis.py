import itertools
import math

import numpy as np
import pytest
from conftest import complex_vectors
from hypothesis import given
from hypothesis import strategies as st

from symtensor import (
    MultiIndex,
    SizeGuardError,
    antisymmetrizer,
    asym_basis,
    asym_dim,
    compose,
    embed_asym,
    embed_sym,
    enumerate_asym_indices,
    enumerate_sym_indices,
    inverse,
    multiindex_norm,
    permutation_matrix,
    sym_basis,
    sym_dim,
    symmetrizer,
)
from symtensor.basis import permutation_sign, sym_tensor_of_vectors, wedge_of_vectors

R2 = math.sqrt(2.0)


@pytest.mark.parametrize("d,n", [(1, 1), (2, 2), (3, 2), (3, 3), (4, 3), (2, 5)])
def test_dimensions(d, n):
    assert len(enumerate_sym_indices(d, n)) == sym_dim(d, n) == math.comb(d + n - 1, n)
    assert len(enumerate_asym_indices(d, n)) == asym_dim(d, n) == (math.comb(d, n) if 2 <= n <= d else 0)


def test_lexicographic_order():
    assert [i.entries for i in enumerate_sym_indices(2, 2)] == [(0, 0), (0, 1), (1, 1)]
    assert [i.entries for i in enumerate_asym_indices(3, 2)] == [(0, 1), (0, 2), (1, 2)]
    assert enumerate_asym_indices(2, 3) == []


def test_degree_one_antisymmetric_power_is_zero():
    assert asym_dim(3, 1) == 0 and enumerate_asym_indices(3, 1) == []
    assert embed_asym(3, 1).shape == (3, 0)
    assert wedge_of_vectors([np.ones(3)]).size == 0
    assert sym_dim(3, 1) == 3


def test_bad_sizes():
    with pytest.raises(ValueError):
        enumerate_sym_indices(0, 2)
    with pytest.raises(ValueError):
        sym_basis(2, 0)


def test_multiindex():
    m = MultiIndex((0, 0, 2))
    assert m.degree == 3
    assert m.multiplicities == (2, 1)
    assert m.is_nondecreasing() and not m.is_increasing()


def test_multiindex_norm():
    assert multiindex_norm((0, 1)) == pytest.approx(1 / R2)
    assert multiindex_norm((0, 0)) == pytest.approx(1.0)
    assert multiindex_norm((0, 0, 1)) == pytest.approx(math.sqrt(2 / 6))
    with pytest.raises(ValueError):
        multiindex_norm((0, 1), n=3)


def test_simple_symmetric_tensor_coordinates():
    e0, e1 = np.eye(2)
    np.testing.assert_allclose(sym_tensor_of_vectors([e0, e1]), [0, 1 / R2, 0], atol=1e-15)
    np.testing.assert_allclose(sym_tensor_of_vectors([e0, e0]), [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(wedge_of_vectors([e0, e1]), [1 / R2], atol=1e-15)
    np.testing.assert_allclose(wedge_of_vectors([e1, e0]), [-1 / R2], atol=1e-15)


@pytest.mark.parametrize("d,n", [(2, 2), (3, 2), (3, 3), (2, 4)])
def test_embeddings_are_isometries_onto_the_projector_ranges(d, n):
    Q = embed_sym(d, n)
    np.testing.assert_allclose(Q.conj().T @ Q, np.eye(Q.shape[1]), atol=1e-14)
    np.testing.assert_allclose(Q @ Q.conj().T, symmetrizer(d, n), atol=1e-14)
    if n <= d:
        P = embed_asym(d, n)
        np.testing.assert_allclose(P.conj().T @ P, np.eye(P.shape[1]), atol=1e-14)
        np.testing.assert_allclose(P @ P.conj().T, antisymmetrizer(d, n), atol=1e-14)
        np.testing.assert_allclose(Q.conj().T @ P, 0, atol=1e-14)


def test_sparse_and_dense_embeddings_agree(rng):
    b = sym_basis(3, 3)
    x = rng.standard_normal(b.dim) + 1j * rng.standard_normal(b.dim)
    np.testing.assert_allclose(b.embed_vector(x), b.embed() @ x, atol=1e-14)
    np.testing.assert_allclose(b.project_vector(b.embed_vector(x)), x, atol=1e-14)
    a = asym_basis(4, 2)
    y = rng.standard_normal(a.dim)
    np.testing.assert_allclose(a.embed_vector(y), a.embed() @ y, atol=1e-14)


def test_size_guard(monkeypatch):
    monkeypatch.setenv("SYMTENSOR_MAX_DIM", "10")
    with pytest.raises(SizeGuardError):
        embed_sym(4, 2)
    monkeypatch.setenv("SYMTENSOR_MAX_DIM", "lots")
    with pytest.raises(SizeGuardError):
        embed_sym(2, 2)


perms3 = st.permutations(list(range(3)))


@given(perms3, perms3)
def test_permutation_matrices_multiply(pi, tau):
    lhs = permutation_matrix(compose(pi, tau), 2)
    rhs = permutation_matrix(pi, 2) @ permutation_matrix(tau, 2)
    np.testing.assert_array_equal(lhs, rhs)


@given(perms3)
def test_inverse_and_sign(pi):
    assert compose(pi, inverse(pi)) == (0, 1, 2)
    P = permutation_matrix(pi, 3)
    np.testing.assert_array_equal(P @ P.T, np.eye(27))
    # sign agrees with the determinant of the 3x3 permutation matrix
    M = np.zeros((3, 3))
    M[list(pi), range(3)] = 1
    assert permutation_sign(pi) == round(np.linalg.det(M))


def test_permutation_action_on_simple_tensors(rng):
    u = [rng.standard_normal(3) for _ in range(3)]
    pi = (2, 0, 1)
    x = np.kron(np.kron(u[0], u[1]), u[2])
    y = np.kron(np.kron(u[pi[0]], u[pi[1]]), u[pi[2]])
    np.testing.assert_allclose(permutation_matrix(pi, 3) @ x, y, atol=1e-14)


def test_bad_permutation():
    with pytest.raises(ValueError):
        compose((0, 0), (0, 1))
    with pytest.raises(ValueError):
        compose((0, 1), (0, 1, 2))


@given(complex_vectors(3), complex_vectors(3))
def test_symmetric_tensor_is_commutative(u, v):
    np.testing.assert_allclose(sym_tensor_of_vectors([u, v]), sym_tensor_of_vectors([v, u]), atol=1e-12)
    np.testing.assert_allclose(wedge_of_vectors([u, v]), -wedge_of_vectors([v, u]), atol=1e-12)


@given(complex_vectors(2), complex_vectors(2), complex_vectors(2))
def test_symmetric_tensor_inner_products_are_permanents(u, v, w):
    # <u1.u2, v1.v2> = (1/2) per [<u_i, v_j>]
    x = sym_tensor_of_vectors([u, v])
    y = sym_tensor_of_vectors([w, v])
    g = np.array([[np.vdot(a, b) for b in (w, v)] for a in (u, v)])
    per = sum(np.prod([g[i, p[i]] for i in range(2)]) for p in itertools.permutations(range(2))) / 2
    assert np.vdot(x, y) == pytest.approx(per, abs=1e-10 * (1 + abs(per)))
