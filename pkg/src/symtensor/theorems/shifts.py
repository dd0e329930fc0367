"""Shift, back shift and diagonal operators on l^2: degree blocks and explicit vectors.

Coefficient arrays follow the convention v = 2 * sum_{k <= l} a[k, l] e_k . e_l,
so ONB coordinates are 2 a[k, k] on the diagonal and sqrt(2) a[k, l] off it.
Only the upper triangle k <= l of ``a`` is meaningful.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..basis import basis_for, sym_basis
from ..operators import OperatorSpec, materialize
from ..products import apply_averaged_tensor, apply_sym_product
from ..spectral import (
    SpectrumReport,
    build_Ak,
    build_Bk,
    build_Ck,
    hermitian_eigen,
    multiset_union,
    operator_norm,
    spec_Ak,
    spec_Bk,
    spec_Ck,
)
from .report import Tally

EPS = np.finfo(float).eps
MAX_BLOCK_DEGREE = 200


# --- S . S^* on total-degree blocks ---------------------------------------


def _degree_positions(flavor, k):
    """Basis columns of total degree k, ordered by the smaller index ascending."""
    n_trunc = k + 1
    if flavor == "full":
        return [i * n_trunc + (k - i) for i in range(k + 1)]
    basis = basis_for(flavor, n_trunc, 2)
    return [c for c, idx in enumerate(basis.indices) if sum(idx.entries) == k]


def degree_block(k, flavor="sym"):
    """Matrix of (S (x) S^* + S^* (x) S)/2 on the degree-k monomials.

    Built from the embedding isometry and the averaged tensor on the
    (k+1)-dimensional compression; degree-k monomials never leave that
    compression, so the block is exact.  ``flavor`` is "full" (A_k),
    "sym" (B_k) or "asym" (C_k).
    """
    if k < 0:
        raise ValueError("degree must be >= 0")
    n_trunc = k + 1
    s = materialize(OperatorSpec.shift(), n_trunc)
    st = materialize(OperatorSpec.backshift(), n_trunc)
    cols = _degree_positions(flavor, k)
    size = len(cols)
    out = np.zeros((size, size), dtype=np.complex128)
    if flavor == "full":
        for j, pos in enumerate(cols):
            x = np.zeros(n_trunc * n_trunc, dtype=np.complex128)
            x[pos] = 1.0
            out[:, j] = apply_averaged_tensor([s, st], x)[cols]
        return out
    basis = basis_for(flavor, n_trunc, 2)
    for j, c in enumerate(cols):
        coords = np.zeros(basis.dim, dtype=np.complex128)
        coords[c] = 1.0
        y = basis.project_vector(apply_averaged_tensor([s, st], basis.embed_vector(coords)))
        out[:, j] = y[cols]
    return out


def mesh_gap(points, lo=-1.0, hi=1.0):
    """Largest hole left in [lo, hi] by a finite set of reals."""
    p = np.sort(np.clip(np.asarray(points, dtype=float), lo, hi))
    edges = np.concatenate([[lo], p, [hi]])
    return float(np.max(np.diff(edges)))


def shift_block_spectra(K, tol=1e-10):
    """Eigenvalue multisets of S . S^* and S ^ S^* up to total degree K.

    The multisets are the cosine closed forms; each block is cross-checked
    against the Jacobi eigenvalues of its dense restriction, and
    ``max_residual`` records the largest disagreement.
    """
    if not 0 <= K <= MAX_BLOCK_DEGREE:
        raise ValueError(f"K must be in [0, {MAX_BLOCK_DEGREE}]")
    sym_parts, asym_parts = [], []
    sym_dev = asym_dev = 0.0
    for k in range(K + 1):
        closed = spec_Bk(k)
        dense = hermitian_eigen(degree_block(k, "sym"), tol).eigenvalues
        sym_dev = max(sym_dev, float(np.max(np.abs(dense - closed))))
        sym_parts.append(closed)
        if k >= 1:
            closed = spec_Ck(k)
            dense = hermitian_eigen(degree_block(k, "asym"), tol).eigenvalues
            asym_dev = max(asym_dev, float(np.max(np.abs(dense - closed))))
            asym_parts.append(closed)
    sym = SpectrumReport(np.sort(multiset_union(*sym_parts).real), "closed-form", sym_dev, tol)
    asym_vals = multiset_union(*asym_parts).real if asym_parts else np.zeros(0)
    asym = SpectrumReport(np.sort(asym_vals), "closed-form", asym_dev, tol)
    return sym, asym


def check_shift_blocks(K, tol, tally=None):
    """Every block identity at degrees 0..K, recorded into a Tally."""
    t = tally or Tally()
    block_tol = 1e-12
    for k in range(K + 1):
        pairs = [("A", "full", build_Ak, spec_Ak), ("B", "sym", build_Bk, spec_Bk)]
        if k >= 1:
            pairs.append(("C", "asym", build_Ck, spec_Ck))
        spectra = {}
        for name, flavor, build, closed in pairs:
            dense = degree_block(k, flavor)
            t.equal(np.max(np.abs(dense - build(k))), block_tol, f"{name}_k matches dense restriction", k=k)
            rep = hermitian_eigen(build(k), tol)
            spectra[name] = rep.eigenvalues
            t.equal(np.max(np.abs(rep.eigenvalues - closed(k))), tol, f"{name}_k cosine spectrum", k=k)
            t.upper(np.max(np.abs(rep.eigenvalues)), 1.0, tol, f"{name}_k spectrum inside [-1, 1]", k=k)
        union = spectra["B"] if k == 0 else np.concatenate([spectra["B"], spectra["C"]])
        t.equal(np.max(np.abs(np.sort(union) - spectra["A"])), tol, "sigma(A_k) = sigma(B_k) + sigma(C_k)", k=k)
    sym, asym = shift_block_spectra(K, tol)
    gap = mesh_gap(np.concatenate([sym.eigenvalues, asym.eigenvalues]))
    t.observe(K=K, mesh_gap=gap, sym_count=int(sym.eigenvalues.size), asym_count=int(asym.eigenvalues.size))
    if K >= 100:
        t.upper(gap, 0.1, 0.0, "block eigenvalues fill [-1, 1] with gaps below 0.1", K=K)
    return t


# --- S . M: the kernel construction ----------------------------------------


@dataclass
class KernelCoefficients:
    """Coefficients a[k, l] (0 <= k <= l <= K) of a candidate kernel vector of S . M.

    ``trivial_index`` is set when some mu_i = 0 and the vector is e_i . e_i.
    """

    K: int
    a: np.ndarray
    C: float
    delta: float
    mu: np.ndarray
    c: float
    trivial_index: int = None

    def coordinates(self):
        """Coordinates in the symmetric ONB of span{e_0, ..., e_K}."""
        basis = sym_basis(self.K + 1, 2)
        out = np.empty(basis.dim, dtype=np.complex128)
        for col, idx in enumerate(basis.indices):
            k, l = idx.entries
            out[col] = 2.0 * self.a[k, l] if k == l else math.sqrt(2.0) * self.a[k, l]
        return out

    def decay_margins(self):
        """(k, r, C^2/(k+r)^3 - |a[k, k+2r]|^2) for every stored even-offset entry, k >= 1."""
        out = []
        for k in range(1, self.K + 1):
            for r in range(0, (self.K - k) // 2 + 1):
                bound = self.C**2 / (k + r) ** 3
                out.append((k, r, bound - abs(self.a[k, k + 2 * r]) ** 2))
        return out

    def pair_margins(self):
        """Margins of |a[k,k]|^2 < 1/(k+1)^3 and |a[k-1,k+1]|^2 < 1/(k+1)^3, k >= 1."""
        out = []
        for k in range(1, self.K + 1):
            bound = 1.0 / (k + 1) ** 3
            out.append((k, "diagonal", bound - abs(self.a[k, k]) ** 2))
            if k + 1 <= self.K:
                out.append((k, "offset-two", bound - abs(self.a[k - 1, k + 1]) ** 2))
        return out


def _mu_prefix(mu, count):
    mu = np.asarray(mu, dtype=np.complex128).ravel()
    if mu.size < count:
        raise ValueError(f"need at least {count} diagonal entries mu_0..mu_{count - 1}, got {mu.size}")
    return mu[:count]


def kernel_vector_SM(mu, K, c=0.5):
    """Coefficients built by the four-step recipe for a kernel vector of S . M.

    Step 1 zeroes row 0.  Step 2 zeroes a[k-1, k+2r] for k >= 2.  Step 3
    sets a[1,1] = 0 and, for k >= 2, (2 a[k,k], a[k-1,k+1]) = t_k (-mu_{k+1}, mu_k)
    / ||(mu_k, mu_{k+1})|| with t_k = c / (k+1)^{3/2}; this pair is orthogonal
    to (conj mu_k, conj mu_{k+1}).  Step 4 fills a[k-1, k+1+2r] = -a[k, k+2r]
    mu_k / mu_{k+1+2r} for r >= 1, working down from the highest row.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if not 0.0 < c < 1.0:
        raise ValueError("c must lie in (0, 1)")
    mu = _mu_prefix(mu, K + 2)
    a = np.zeros((K + 1, K + 1), dtype=np.complex128)
    zeros = np.flatnonzero(mu[: K + 1] == 0)
    norm_m = float(np.max(np.abs(mu)))
    if zeros.size:
        i = int(zeros[0])
        a[i, i] = 0.5  # v = e_i . e_i
        return KernelCoefficients(K, a, math.inf, 0.0, mu, c, trivial_index=i)
    delta = float(np.min(np.abs(mu[: K + 1])))
    big_c = math.sqrt(norm_m / delta)
    for k in range(2, K + 1):
        t = c / (k + 1) ** 1.5
        pair = np.array([-mu[k + 1], mu[k]]) * (t / np.linalg.norm(mu[k : k + 2]))
        a[k, k] = pair[0] / 2
        if k + 1 <= K:
            a[k - 1, k + 1] = pair[1]
    for k in range(K, 1, -1):
        for l in range(k + 3, K + 1, 2):
            a[k - 1, l] = -a[k, l - 1] * mu[k] / mu[l]
    return KernelCoefficients(K, a, big_c, delta, mu, c)


def sm_coefficients(mu, a, lam=0.0):
    """Coefficient of e_k . e_l (k <= l <= K) in ((S . M) - lam) v, v = 2 sum a[k,l] e_k . e_l.

    Written out case by case from (S . M)(e_i . e_j) = (mu_j e_{i+1} . e_j + mu_i e_i . e_{j+1})/2.
    """
    K = a.shape[0] - 1
    mu = _mu_prefix(mu, K + 1)
    r = np.zeros_like(a)
    for k in range(K + 1):
        for l in range(k, K + 1):
            if k == 0 and l == 0:
                val = 0.0
            elif k == 0 and l == 1:
                val = 2 * mu[0] * a[0, 0]
            elif k == 0:
                val = mu[0] * a[0, l - 1]
            elif k == l:
                val = mu[k] * a[k - 1, k]
            elif l == k + 1:
                val = 2 * mu[k] * a[k, k] + mu[k + 1] * a[k - 1, k + 1]
            else:
                val = mu[k] * a[k, l - 1] + mu[l] * a[k - 1, l]
            r[k, l] = val - lam * a[k, l]
    return r


def equation_family(k, l):
    if k == 0:
        return "row-zero"
    if k == l:
        return "diagonal"
    if l == k + 1:
        return "first-offdiagonal"
    return "interior"


def _sym_matrix(mats):
    """Matrix of A . B in the symmetric ONB, one column at a time (no dense Kronecker product)."""
    n = mats[0].shape[0]
    dim = sym_basis(n, 2).dim
    out = np.empty((dim, dim), dtype=np.complex128)
    e = np.zeros(dim, dtype=np.complex128)
    for j in range(dim):
        e[j] = 1.0
        out[:, j] = apply_sym_product(mats, e)
        e[j] = 0.0
    return out


def sm_matrix(mu, K):
    """S . M on the symmetric square of span{e_0, ..., e_K}."""
    mu = _mu_prefix(mu, K + 1)
    return _sym_matrix([materialize(OperatorSpec.shift(), K + 1), np.diag(mu)])


def degree_graded_norm(T, K):
    """Norm of a matrix on the symmetric square of span{e_0..e_K} that moves total degree by one.

    Images of different degrees are orthogonal, so the norm is the largest
    norm of the column slices grouped by degree.
    """
    degrees = np.array([sum(idx.entries) for idx in sym_basis(K + 1, 2).indices])
    best = 0.0
    for g in np.unique(degrees):
        block = T[:, degrees == g]
        rows = np.flatnonzero(np.any(block != 0, axis=1))
        if rows.size:
            best = max(best, operator_norm(block[rows]).value)
    return best


def check_kernel_vector(mu, K, tol=1e-13, c=0.5, tally=None, label=None):
    t = tally or Tally()
    kc = kernel_vector_SM(mu, K, c)
    tag = {} if label is None else {"draw": label}
    if kc.trivial_index is not None:
        v = kc.coordinates()
        res = np.linalg.norm(sm_matrix(kc.mu, K) @ v)
        t.equal(res, tol, "zero diagonal entry gives (S.M)(e_i.e_i) = 0", i=kc.trivial_index, **tag)
        return kc, t
    r = sm_coefficients(kc.mu, kc.a)
    worst = {}
    for k in range(K + 1):
        for l in range(k, K + 1):
            fam = equation_family(k, l)
            val = abs(r[k, l])
            if val > worst.get(fam, (-1.0,))[0]:
                worst[fam] = (val, k, l)
    for fam, (val, k, l) in sorted(worst.items()):
        t.equal(val, tol, f"kernel equation ({fam})", k=k, l=l, **tag)
    k, r_, m = min(kc.decay_margins(), key=lambda item: item[2])
    # the bound is strict, so a zero margin is a failure too
    t.strict(m, "decay |a[k,k+2r]|^2 < C^2/(k+r)^3", k=k, r=r_, **tag)
    k, which, m = min(kc.pair_margins(), key=lambda item: item[2])
    t.strict(m, "step-three pair below 1/(k+1)^3", k=k, entry=which, **tag)
    return kc, t


# --- S . M: no nonzero eigenvalues -----------------------------------------


def forced_solution(mu, lam, K):
    """Solve the eigen-equations of S . M for lam != 0 in the order the induction uses.

    Each equation at (k, l) determines a[k, l] from entries already fixed, so
    the homogeneous system has only the zero solution; the forward
    substitution returns the coefficients it is forced to.
    """
    if lam == 0:
        raise ValueError("lam must be nonzero")
    mu = _mu_prefix(mu, K + 1)
    a = np.zeros((K + 1, K + 1), dtype=np.complex128)
    # row 0: -lam a00 = 0, then 2 mu0 a00 = lam a01, mu0 a[0,l-1] = lam a[0,l]
    a[0, 0] = 0.0
    for l in range(1, K + 1):
        a[0, l] = (2 * mu[0] * a[0, 0] if l == 1 else mu[0] * a[0, l - 1]) / lam
    for k in range(1, K + 1):
        a[k, k] = mu[k] * a[k - 1, k] / lam
        if k + 1 <= K:
            a[k, k + 1] = (2 * mu[k] * a[k, k] + mu[k + 1] * a[k - 1, k + 1]) / lam
        for l in range(k + 2, K + 1):
            a[k, l] = (mu[k] * a[k, l - 1] + mu[l] * a[k - 1, l]) / lam
    return a


def verify_point_spectrum_SM(mu, lam, K, tol=1e-12, seed=0, tally=None, label=None):
    """No nonzero eigenvalue for the degree-truncated S . M.

    Two routes: the recurrence forces every coefficient to zero, and the
    dense compression minus lam is lower triangular in the multi-index
    order with constant diagonal -lam, hence invertible.
    """
    t = tally or Tally()
    tag = {} if label is None else {"draw": label}
    lam = complex(lam)
    a = forced_solution(mu, lam, K)
    t.equal(np.max(np.abs(a)), tol, "recurrence forces the zero solution", **tag)
    T = sm_matrix(mu, K) - lam * np.eye(sym_basis(K + 1, 2).dim)
    scale = max(1.0, float(np.max(np.abs(mu[: K + 1]))))
    t.equal(np.max(np.abs(np.triu(T, 1))), tol * scale, "S.M - lam is lower triangular", **tag)
    t.equal(np.max(np.abs(np.diagonal(T) + lam)), tol * scale, "diagonal of S.M - lam equals -lam", **tag)
    t.record(abs(lam), "triangular system is nonsingular (|lam| > 0)", **tag)
    if tally is None:
        return t.report("point-spectrum", "S . M has no eigenvalue lam != 0 (degree truncation)", seed, tol)
    return t


# --- S^* . M: eigenvectors for |lam| < |mu_0|/2 ------------------------------


@dataclass
class BackshiftEigenvector:
    coordinates: np.ndarray
    ratio: complex
    residual: float
    tail_bound: float
    exact_tail: float
    rounding: float


def backshift_matrix(mu, K):
    mu = _mu_prefix(mu, K + 1)
    return _sym_matrix([materialize(OperatorSpec.backshift(), K + 1), np.diag(mu)])


def backshift_eigenvector(mu, lam, K):
    """v = sum_{j <= K} (2 lam / mu_0)^j e_0 . e_j and its relative residual under S^* . M.

    ``tail_bound`` is 2 ||M|| |2 lam / mu_0|^K; ``exact_tail`` is the residual
    of the truncation in exact arithmetic, |lam| |c|^K / (sqrt 2 ||v||);
    ``rounding`` is the floating-point allowance for the computed residual.
    """
    mu = _mu_prefix(mu, K + 1)
    lam = complex(lam)
    mu0 = mu[0]
    basis = sym_basis(K + 1, 2)
    v = np.zeros(basis.dim, dtype=np.complex128)
    if mu0 == 0:
        if lam != 0:
            raise ValueError("with mu_0 = 0 only lam = 0 has the explicit eigenvector e_0 . e_0")
        ratio = 0.0
    else:
        ratio = 2 * lam / mu0
        if abs(ratio) >= 1.0:
            raise ValueError(
                f"|lam| = {abs(lam):.6g} >= |mu_0|/2 = {abs(mu0) / 2:.6g}: the coefficient series "
                "sum (2 lam/mu_0)^j does not converge, no eigenvector is constructed"
            )
    for j in range(K + 1):
        coeff = ratio**j if j else 1.0
        # e_0 . e_j is the unit vector for j = 0 and 1/sqrt(2) times it otherwise
        v[basis.position[(0, j)]] = coeff if j == 0 else coeff / math.sqrt(2.0)
    mats = [materialize(OperatorSpec.backshift(), K + 1), np.diag(mu)]
    vnorm = np.linalg.norm(v)
    residual = float(np.linalg.norm(apply_sym_product(mats, v) - lam * v) / vnorm)
    norm_m = float(np.max(np.abs(mu)))
    cabs = abs(ratio)
    tail = 2.0 * norm_m * cabs**K
    exact = abs(lam) * cabs**K / (math.sqrt(2.0) * vnorm) if K >= 1 else abs(lam)
    rounding = 8.0 * EPS * (norm_m + abs(lam))
    return BackshiftEigenvector(v, complex(ratio), residual, tail, exact, rounding)


def norm_bounds_compressed(mu, K, adjoint=False):
    """(norm, lower, upper) for the compression of S . M (or S^* . M) to degree-K coordinates.

    The lower bound max_{i<=K} |mu_i| / sqrt(2) comes from the image of
    e_i . e_i (i >= 1) or sqrt(2) e_0 . e_1 (i = 0) under S^* . M, and the
    adjoint relation for S . M.
    """
    mu = _mu_prefix(mu, K + 1)
    T = backshift_matrix(mu, K) if adjoint else sm_matrix(mu, K)
    value = degree_graded_norm(T, K)
    lower = float(np.max(np.abs(mu))) / math.sqrt(2.0) if K >= 1 else 0.0
    upper = float(np.max(np.abs(mu)))
    return value, lower, upper
