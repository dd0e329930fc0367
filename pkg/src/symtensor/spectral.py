"""Norms, spectral radii and eigenvalue multisets, plus closed-form spectra.

Dense eigenvalues come from the solvers in ``eigen``; the closed forms
(cosine formulas for the shift blocks, products of diagonal entries) are
kept separate so each can be checked against the other.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .basis import as_complex_matrix, enumerate_sym_indices
from .eigen import jacobi_eigh, schur, schur_eigenvectors
from .errors import SizeGuardError

DEFAULT_TOL = 1e-10
MAX_GENERAL_DIM = 500


@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray
    method: str
    max_residual: float
    tolerance: float
    eigenvectors: np.ndarray = field(default=None, repr=False)

    @property
    def ok(self):
        return self.max_residual <= self.tolerance

    def to_dict(self):
        ev = np.asarray(self.eigenvalues, dtype=np.complex128)
        return {
            "eigenvalues": [[float(z.real), float(z.imag)] for z in ev],
            "method": self.method,
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tolerance),
        }


@dataclass
class NormReport:
    value: float
    method: str
    iterations: int

    def to_dict(self):
        return {"value": float(self.value), "method": self.method, "iterations": int(self.iterations)}


def _scale(M):
    s = float(np.linalg.norm(M))
    return s if s > 0 else 1.0


def _residual(M, values, vectors):
    if vectors.size == 0:
        return 0.0
    r = M @ vectors - vectors * values
    return float(np.max(np.linalg.norm(r, axis=0) / np.linalg.norm(vectors, axis=0)))


def hermitian_eigen(M, tol=DEFAULT_TOL):
    """Real eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi."""
    M = as_complex_matrix(M)
    scale = _scale(M)
    if np.linalg.norm(M - M.conj().T) > tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    w, V, _ = jacobi_eigh(M)
    res = _residual(M, w, V)
    return SpectrumReport(w, "hermitian-jacobi", res, tol * scale, V)


def general_eigen(M, tol=DEFAULT_TOL):
    """Complex eigenvalues via Hessenberg reduction and shifted QR.

    Every eigenvalue is certified by the backward error of its Schur
    eigenvector, ||M v - lam v|| / ||v|| <= tol * ||M||.
    """
    M = as_complex_matrix(M)
    n = M.shape[0]
    if n > MAX_GENERAL_DIM:
        raise SizeGuardError(f"general_eigen is limited to dimension {MAX_GENERAL_DIM}, got {n}")
    T, Z, _ = schur(M)
    w = np.diag(T).copy()
    X = schur_eigenvectors(T, Z)
    res = _residual(M, w, X)
    return SpectrumReport(w, "general-qr", res, tol * _scale(M), X)


def charpoly_residuals(M, eigenvalues):
    """|det(M - lam I)|**(1/dim) for each lam, computed by LU (diagnostic only)."""
    M = as_complex_matrix(M)
    n = M.shape[0]
    out = []
    for lam in eigenvalues:
        sign, logdet = np.linalg.slogdet(M - lam * np.eye(n))
        out.append(0.0 if sign == 0 else float(np.exp(logdet / n)))
    return np.array(out)


def operator_norm(M, tol=1e-12, method="svd-via-hermitian"):
    """Largest singular value of M."""
    M = as_complex_matrix(M, square=False)
    G = M.conj().T @ M
    if method == "svd-via-hermitian":
        w, _, sweeps = jacobi_eigh(G)
        top = max(float(w[-1]), 0.0) if w.size else 0.0
        return NormReport(math.sqrt(top), method, sweeps)
    if method == "power-iteration":
        rng = np.random.default_rng(0)
        x = rng.standard_normal(G.shape[0]) + 1j * rng.standard_normal(G.shape[0])
        x /= np.linalg.norm(x)
        value = 0.0
        for it in range(1, 20001):
            y = G @ x
            ny = np.linalg.norm(y)
            if ny == 0.0:
                return NormReport(0.0, method, it)
            new = float(np.real(np.vdot(x, y)))
            x = y / ny
            if abs(new - value) <= tol * max(new, 1e-300):
                return NormReport(math.sqrt(max(new, 0.0)), method, it)
            value = new
        return NormReport(math.sqrt(max(value, 0.0)), method, it)
    raise ValueError(f"unknown norm method {method!r}")


def norm(M):
    return operator_norm(M).value


def spectral_radius(M, tol=DEFAULT_TOL):
    rep = general_eigen(M, tol)
    return float(np.max(np.abs(rep.eigenvalues))) if rep.eigenvalues.size else 0.0


def gelfand_estimate(M, k):
    """||M^k||**(1/k): an upper bound on the spectral radius for every k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    P = np.linalg.matrix_power(as_complex_matrix(M), k)
    return operator_norm(P).value ** (1.0 / k)


# --- multisets -----------------------------------------------------------


def sort_multiset(values):
    v = np.asarray(values, dtype=np.complex128).ravel()
    order = np.lexsort((v.imag, v.real))
    return v[order]


def _is_real(v, tol):
    return v.size == 0 or float(np.max(np.abs(v.imag))) <= tol


def _greedy_pairs(a, b, tol):
    """Pair each element of a (sorted) with its nearest unmatched element of b."""
    used = np.zeros(b.size, dtype=bool)
    worst = 0.0
    for x in a:
        dist = np.abs(b - x)
        dist[used] = np.inf
        j = int(np.argmin(dist))
        if not np.isfinite(dist[j]) or dist[j] > tol:
            return None
        used[j] = True
        worst = max(worst, float(dist[j]))
    return worst


def _assignment_worst(a, b):
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if rows.size else 0.0


def multiset_distance(a, b):
    """Largest deviation under the best pairing of two equal-size multisets."""
    a = sort_multiset(a)
    b = sort_multiset(b)
    if a.size != b.size:
        return math.inf
    if a.size == 0:
        return 0.0
    if _is_real(a, 0.0) and _is_real(b, 0.0):
        return float(np.max(np.abs(np.sort(a.real) - np.sort(b.real))))
    return _assignment_worst(a, b)


def multisets_match(a, b, tol):
    """Equal-size multisets whose elements pair up within ``tol``."""
    a = sort_multiset(a)
    b = sort_multiset(b)
    if a.size != b.size:
        return False
    if a.size == 0:
        return True
    if _is_real(a, 0.0) and _is_real(b, 0.0):
        return float(np.max(np.abs(np.sort(a.real) - np.sort(b.real)))) <= tol
    if _greedy_pairs(a, b, tol) is not None:
        return True
    # greedy can strand an element when clusters overlap; fall back to assignment
    return _assignment_worst(a, b) <= tol


def multiset_contains(sub, sup, tol):
    """Every element of ``sub`` pairs with a distinct element of ``sup`` within ``tol``."""
    a = sort_multiset(sub)
    b = sort_multiset(sup)
    if a.size > b.size:
        return False
    if a.size == 0:
        return True
    if _greedy_pairs(a, b, tol) is not None:
        return True
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) <= tol


def containment_distance(sub, sup):
    """Largest deviation when each element of ``sub`` takes a distinct partner in ``sup``."""
    a = sort_multiset(sub)
    b = sort_multiset(sup)
    if a.size > b.size:
        return math.inf
    if a.size == 0:
        return 0.0
    return _assignment_worst(a, b)


def multiset_union(*parts):
    return sort_multiset(np.concatenate([np.asarray(p, dtype=np.complex128).ravel() for p in parts]))


def sum_set(a, b, scale=1.0):
    """Multiset {scale * (x + y)} over all ordered pairs."""
    a = np.asarray(a, dtype=np.complex128).ravel()
    b = np.asarray(b, dtype=np.complex128).ravel()
    return scale * (a[:, None] + b[None, :]).ravel()


def product_set(a, b):
    a = np.asarray(a, dtype=np.complex128).ravel()
    b = np.asarray(b, dtype=np.complex128).ravel()
    return (a[:, None] * b[None, :]).ravel()


# --- shift blocks: tridiagonal matrices and their cosine spectra ----------


def _tridiag(size, off):
    m = np.zeros((size, size), dtype=np.complex128)
    if size > 1:
        i = np.arange(size - 1)
        m[i, i + 1] = off
        m[i + 1, i] = off
    return m


def build_Ak(k):
    """(k+1)x(k+1) tridiagonal block with 1/2 off the diagonal; A_0 = [0]."""
    if k < 0:
        raise ValueError("A_k needs k >= 0")
    return _tridiag(k + 1, 0.5)


def build_Bk(k):
    """Symmetric-part block: size floor(k/2)+1, corner 1/2 (k odd) or off-corner 1/sqrt(2) (k even)."""
    if k < 0:
        raise ValueError("B_k needs k >= 0")
    size = k // 2 + 1
    m = _tridiag(size, 0.5)
    if k == 0:
        return m
    if k % 2 == 1:
        m[-1, -1] = 0.5
    else:
        m[-1, -2] = m[-2, -1] = 1.0 / math.sqrt(2.0)
    return m


def build_Ck(k):
    """Antisymmetric-part block: size floor((k+1)/2), corner ((-1)^k - 1)/4."""
    if k < 1:
        raise ValueError("C_k needs k >= 1")
    m = _tridiag((k + 1) // 2, 0.5)
    m[-1, -1] = ((-1) ** k - 1) / 4.0
    return m


def spec_Ak(k):
    if k < 0:
        raise ValueError("A_k needs k >= 0")
    j = np.arange(1, k + 2)
    return np.sort(np.cos(j * np.pi / (k + 2)))


def spec_Bk(k):
    if k < 0:
        raise ValueError("B_k needs k >= 0")
    j = np.arange(1, (k + 2) // 2 + 1)
    return np.sort(np.cos((2 * j - 1) * np.pi / (k + 2)))


def spec_Ck(k):
    if k < 1:
        raise ValueError("C_k needs k >= 1")
    j = np.arange(1, (k + 1) // 2 + 1)
    return np.sort(np.cos(2 * j * np.pi / (k + 2)))


# --- diagonal operators ---------------------------------------------------


def diag_sym_spectrum(lams, mus, N):
    """{(lam_i mu_j + lam_j mu_i)/2 : 0 <= i <= j < N}, in multi-index order."""
    lams = np.asarray(lams, dtype=np.complex128).ravel()
    mus = np.asarray(mus, dtype=np.complex128).ravel()
    if lams.size < N or mus.size < N:
        raise ValueError(f"need {N} values of each sequence")
    i, j = np.triu_indices(N)
    return (lams[i] * mus[j] + lams[j] * mus[i]) / 2


def multi_diag_sym_spectrum(specs, N):
    """Eigenvalues of D_1 . ... . D_n for diagonal D_k, one per sorted index tuple."""
    n = len(specs)
    if n > 4 or N > 12:
        raise SizeGuardError("multi_diag_sym_spectrum is limited to n <= 4 and N <= 12")
    seqs = [np.asarray(s, dtype=np.complex128).ravel() for s in specs]
    if any(s.size < N for s in seqs):
        raise ValueError(f"need {N} values of each sequence")
    perms = list(itertools.permutations(range(n)))
    out = []
    for idx in enumerate_sym_indices(N, n):
        total = 0.0 + 0.0j
        for perm in perms:
            term = 1.0 + 0.0j
            for slot, i in enumerate(idx.entries):
                term *= seqs[perm[slot]][i]
            total += term
        out.append(total / len(perms))
    return np.array(out, dtype=np.complex128)
