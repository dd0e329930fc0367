import math

import numpy as np
import pytest

from symtensor import build_Ak, build_Bk, build_Ck, operator_norm, sym_basis
from symtensor.theorems import (
    backshift_eigenvector,
    check_kernel_vector,
    degree_block,
    kernel_vector_SM,
    shift_block_spectra,
    verify_point_spectrum_SM,
)
from symtensor.theorems.shifts import (
    backshift_matrix,
    check_shift_blocks,
    degree_graded_norm,
    equation_family,
    forced_solution,
    mesh_gap,
    norm_bounds_compressed,
    sm_coefficients,
    sm_matrix,
)


@pytest.mark.parametrize("k", range(8))
def test_degree_blocks(k):
    np.testing.assert_allclose(degree_block(k, "full"), build_Ak(k), atol=1e-14)
    np.testing.assert_allclose(degree_block(k, "sym"), build_Bk(k), atol=1e-14)
    if k >= 1:
        np.testing.assert_allclose(degree_block(k, "asym"), build_Ck(k), atol=1e-14)


def test_shift_block_spectra_fill_the_interval():
    sym, asym = shift_block_spectra(100)
    assert sym.max_residual < 1e-10 and asym.max_residual < 1e-10
    assert sym.eigenvalues.size == sum(k // 2 + 1 for k in range(101))
    assert asym.eigenvalues.size == sum((k + 1) // 2 for k in range(1, 101))
    assert mesh_gap(np.concatenate([sym.eigenvalues, asym.eigenvalues])) < 0.1
    assert check_shift_blocks(12, 1e-10).failures == 0
    with pytest.raises(ValueError):
        shift_block_spectra(201)


def test_mesh_gap():
    assert mesh_gap([]) == 2.0
    assert mesh_gap([0.0]) == 1.0


def test_coefficient_equations_match_dense_matrix(rng):
    K = 7
    mu = rng.uniform(0.1, 1.0, K + 2) * np.exp(2j * np.pi * rng.uniform(size=K + 2))
    a = np.triu(rng.standard_normal((K + 1, K + 1)) + 1j * rng.standard_normal((K + 1, K + 1)))
    basis = sym_basis(K + 1, 2)
    v = np.array([2 * a[k, l] if k == l else math.sqrt(2) * a[k, l] for k, l in (i.entries for i in basis.indices)])
    image = sm_matrix(mu, K) @ v
    r = sm_coefficients(mu, a)
    # coefficient of e_k . e_l is r[k, l]; the ONB coordinate is r / ||e_k . e_l||
    for col, idx in enumerate(basis.indices):
        k, l = idx.entries
        if k + l <= K:
            scale = 1.0 if k == l else 1 / math.sqrt(2)
            assert image[col] == pytest.approx(r[k, l] * scale, abs=1e-12)


def test_equation_families():
    assert [equation_family(*p) for p in [(0, 3), (2, 2), (2, 3), (1, 4)]] == ["row-zero", "diagonal", "first-offdiagonal", "interior"]


def test_zero_diagonal_entry_gives_trivial_kernel():
    mu = np.array([0.5, 0.7, 0.0, 0.3, 0.2, 0.9])
    kc, t = check_kernel_vector(mu, 4)
    assert kc.trivial_index == 2
    assert t.failures == 0
    v = kc.coordinates()
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert np.linalg.norm(sm_matrix(mu, 4) @ v) == 0.0


def test_kernel_recipe_pieces_that_hold(rng):
    K = 30
    mu = rng.uniform(0.1, 1.0, K + 2) * np.exp(2j * np.pi * rng.uniform(size=K + 2))
    kc = kernel_vector_SM(mu, K)
    assert min(m for _, _, m in kc.pair_margins()) > 0
    assert kc.C == pytest.approx(math.sqrt(np.max(np.abs(mu)) / np.min(np.abs(mu[: K + 1]))))
    r = sm_coefficients(kc.mu, kc.a)
    for k in range(K + 1):
        for l in range(k, K + 1):
            if equation_family(k, l) != "interior":
                assert abs(r[k, l]) <= 1e-13, (k, l)
    # interior equations with k >= 2 hold by construction of the back-substitution
    assert max(abs(r[k, l]) for k in range(2, K + 1) for l in range(k + 2, K + 1)) <= 1e-13


def test_kernel_vector_example_constant_diagonal():
    # constant diagonal, K = 40: every interior equation at the stated tolerance
    K = 40
    kc = kernel_vector_SM(np.ones(K + 2), K)
    r = sm_coefficients(kc.mu, kc.a)
    interior = max(abs(r[k, l]) for k in range(1, K + 1) for l in range(k + 2, K + 1))
    assert interior <= 1e-13


def test_kernel_vector_arguments():
    with pytest.raises(ValueError):
        kernel_vector_SM(np.ones(5), 0)
    with pytest.raises(ValueError):
        kernel_vector_SM(np.ones(5), 3, c=1.5)
    with pytest.raises(ValueError):
        kernel_vector_SM(np.ones(3), 3)


def test_no_nonzero_eigenvalues(rng):
    for _ in range(5):
        mu = rng.uniform(0.1, 1.0, 16)
        lam = complex(rng.standard_normal(), rng.standard_normal())
        rep = verify_point_spectrum_SM(mu, lam, 15)
        assert rep.passed, rep.witnesses
        assert np.max(np.abs(forced_solution(mu, lam, 15))) == 0.0
    with pytest.raises(ValueError):
        forced_solution(np.ones(4), 0, 3)


def test_backshift_eigenvector(rng):
    mu = rng.uniform(0.1, 1.0, 41)
    ev = backshift_eigenvector(mu, 0.0, 40)
    assert ev.residual == 0.0
    lam = 0.3 * abs(mu[0]) * np.exp(1j)
    ev = backshift_eigenvector(mu, lam, 40)
    assert ev.residual <= ev.tail_bound + ev.rounding
    assert ev.exact_tail <= ev.tail_bound
    assert backshift_eigenvector(np.r_[0.0, mu[1:]], 0.0, 10).residual == 0.0


def test_backshift_eigenvector_outside_the_disc():
    mu = np.full(11, 0.8)
    for lam in (0.4, 0.4j, 0.5):
        with pytest.raises(ValueError):
            backshift_eigenvector(mu, lam, 10)
    with pytest.raises(ValueError):
        backshift_eigenvector(np.r_[0.0, mu[1:]], 0.1, 10)


def test_norm_bounds_and_graded_norm(rng):
    K = 9
    mu = rng.uniform(0.0, 1.0, K + 1) * np.exp(2j * np.pi * rng.uniform(size=K + 1))
    for adjoint in (False, True):
        value, lower, upper = norm_bounds_compressed(mu, K, adjoint)
        assert lower - 1e-12 <= value <= upper + 1e-12
        T = backshift_matrix(mu, K) if adjoint else sm_matrix(mu, K)
        assert degree_graded_norm(T, K) == pytest.approx(operator_norm(T).value, rel=1e-12)
