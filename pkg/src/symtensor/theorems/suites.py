"""Registry of verification suites, one per statement id.

Each suite draws from a single generator seeded by the caller and records
every checked inequality or identity into a Tally.  Suite ids follow the
statement numbering used by the command-line interface (``thm-8.1`` etc.).
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..basis import (
    antisymmetrizer,
    asym_basis,
    asym_dim,
    compose,
    enumerate_asym_indices,
    enumerate_sym_indices,
    flat_index,
    inverse,
    multiindex_norm,
    permutation_matrix,
    permutation_sign,
    sym_basis,
    sym_dim,
    sym_tensor_of_vectors,
    symmetrizer,
)
from ..operators import Conjugation, is_c_symmetric
from ..products import asym_product, averaged_tensor, block_decompose, closed_form_2x2, sym_product
from ..spectral import (
    containment_distance,
    diag_sym_spectrum,
    gelfand_estimate,
    general_eigen,
    multi_diag_sym_spectrum,
    multiset_contains,
    multiset_union,
    multiset_distance,
    multisets_match,
    product_set,
    sum_set,
)
from . import checks
from .checks import R2, norm
from .report import Tally
from .sampling import cnormal, complex_symmetric, hermitian, moduli_in, normal_matrix, rng_for, unitary
from .shifts import (
    backshift_eigenvector,
    check_kernel_vector,
    check_shift_blocks,
    norm_bounds_compressed,
    verify_point_spectrum_SM,
)


@dataclass(frozen=True)
class Suite:
    id: str
    statement: str
    fn: object
    trials: int
    tol: float
    K: int = None

    def run(self, trials=None, seed=0, tol=None, K=None):
        trials = self.trials if trials is None else int(trials)
        tol = self.tol if tol is None else float(tol)
        K = self.K if K is None else int(K)
        if trials < 0:
            raise ValueError("trials must be non-negative")
        t = Tally()
        self.fn(t, rng_for(seed), trials, tol, K)
        # no timings here: identical inputs must give byte-identical reports
        if K is not None:
            t.observe(K=K)
        return t.report(self.id, self.statement, seed, tol)


REGISTRY = {}


def suite(sid, statement, trials, tol, K=None):
    def wrap(fn):
        REGISTRY[sid] = Suite(sid, statement, fn, trials, tol, K)
        return fn

    return wrap


def suite_ids():
    return list(REGISTRY)


def get_suite(sid):
    try:
        return REGISTRY[sid]
    except KeyError:
        raise KeyError(f"unknown suite {sid!r}") from None


def run_suite(sid, trials=None, seed=0, tol=None, K=None):
    return get_suite(sid).run(trials=trials, seed=seed, tol=tol, K=K)


def _rel(M):
    return max(1.0, float(np.linalg.norm(M)))


def _err(X, Y):
    return float(np.max(np.abs(np.asarray(X) - np.asarray(Y)))) if np.size(X) else 0.0


def _square(rng, d):
    return cnormal(rng, (d, d))


def _perm(rng, n):
    return tuple(int(p) for p in rng.permutation(n))


def _grid(dmax=4, nmax=3):
    return [(d, n) for n in range(1, nmax + 1) for d in range(1, dmax + 1)]


# --- tensor power spaces ----------------------------------------------------


@suite("prop-2.2", "pi -> pi_hat is a unitary representation: (pi tau)^ = pi_hat tau_hat, pi_hat^* = (pi^-1)^", 100, 1e-12)
def _prop_2_2(t, rng, trials, tol, K):
    for trial in range(trials):
        n = int(rng.integers(2, 5))
        d = int(rng.integers(2, 4))
        pi, tau = _perm(rng, n), _perm(rng, n)
        P, T = permutation_matrix(pi, d), permutation_matrix(tau, d)
        tag = dict(trial=trial, n=n, d=d)
        t.equal(_err(permutation_matrix(compose(pi, tau), d), P @ T), tol, "(pi tau)^ = pi_hat tau_hat", **tag)
        t.equal(_err(P.conj().T @ P, np.eye(P.shape[0])), tol, "pi_hat unitary", **tag)
        t.equal(_err(P.conj().T, permutation_matrix(inverse(pi), d)), tol, "pi_hat^* = (pi^-1)^", **tag)
        vs = [cnormal(rng, d) for _ in range(n)]
        simple = vs[0]
        for v in vs[1:]:
            simple = np.kron(simple, v)
        moved = vs[pi[0]]
        for k in pi[1:]:
            moved = np.kron(moved, vs[k])
        t.equal(_err(P @ simple, moved), tol * _rel(simple), "pi_hat permutes simple tensors", **tag)
        t.equal(permutation_sign(compose(pi, tau)) - permutation_sign(pi) * permutation_sign(tau), 0.0, "sign is multiplicative", **tag)


@suite("prop-2.4", "S_n and A_n are orthogonal projections onto the symmetric and antisymmetric subspaces", 20, 1e-13)
def _prop_2_4(t, rng, trials, tol, K):
    for d, n in _grid():
        S, A = symmetrizer(d, n), antisymmetrizer(d, n)
        tag = dict(d=d, n=n)
        pairs = [("S_n", S, sym_basis(d, n))]
        if n >= 2:
            # the degree-one antisymmetric space is {0} by definition, not the range of A_1 = I
            pairs.append(("A_n", A, asym_basis(d, n)))
        else:
            t.equal(asym_basis(d, 1).dim, 0.0, "degree-one antisymmetric space is {0}", **tag)
        for name, P, basis in pairs:
            t.equal(_err(P @ P, P), tol, f"{name} idempotent", **tag)
            t.equal(_err(P, P.conj().T), tol, f"{name} Hermitian", **tag)
            Q = basis.embed()
            t.equal(_err(Q @ Q.conj().T, P), tol, f"{name} = Q Q^*", **tag)
            t.equal(round(np.trace(P).real) - basis.dim, 0.0, f"rank {name} = subspace dimension", **tag)
        if n >= 2:
            t.equal(_err(S @ A, np.zeros_like(S)), tol, "S_n A_n = 0", **tag)
    for trial in range(trials):
        n = int(rng.integers(2, 4))
        d = int(rng.integers(2, 4))
        x = cnormal(rng, d**n)
        sx, ax = symmetrizer(d, n) @ x, antisymmetrizer(d, n) @ x
        for pi in itertools.permutations(range(n)):
            P = permutation_matrix(pi, d)
            tag = dict(trial=trial, n=n, d=d, perm=list(pi))
            t.equal(_err(P @ sx, sx), tol * _rel(x), "pi_hat fixes S_n x", **tag)
            t.equal(_err(P @ ax, permutation_sign(pi) * ax), tol * _rel(x), "pi_hat A_n x = sgn(pi) A_n x", **tag)


@suite("prop-2.5", "normalized e_i . ... and e_i ^ ... over sorted multi-indices are orthonormal bases", 1, 1e-13)
def _prop_2_5(t, rng, trials, tol, K):
    for d, n in _grid():
        tag = dict(d=d, n=n)
        for flavor, basis, count in (
            ("sym", sym_basis(d, n), sym_dim(d, n)),
            ("asym", asym_basis(d, n), asym_dim(d, n)),
        ):
            Q = basis.embed()
            t.equal(Q.shape[1] - count, 0.0, f"{flavor} dimension formula", **tag)
            t.equal(_err(Q.conj().T @ Q, np.eye(Q.shape[1])), tol, f"{flavor} columns orthonormal", **tag)
        S, A = symmetrizer(d, n), antisymmetrizer(d, n)
        for idx in enumerate_sym_indices(d, n):
            e = np.zeros(d**n)
            e[flat_index(idx.entries, d)] = 1.0
            t.equal(np.linalg.norm(S @ e) - multiindex_norm(idx), tol, "||e_i . ...|| = sqrt(prod m! / n!)", idx=list(idx.entries), **tag)
        for idx in enumerate_asym_indices(d, n):
            e = np.zeros(d**n)
            e[flat_index(idx.entries, d)] = 1.0
            t.equal(np.linalg.norm(A @ e) - 1 / math.sqrt(math.factorial(n)), tol, "||e_i ^ ...|| = 1/sqrt(n!)", idx=list(idx.entries), **tag)
        if n > d:
            t.equal(float(asym_dim(d, n)), 0.0, "antisymmetric power vanishes for n > d", **tag)


@suite("prop-2.6", "H (x) H is the orthogonal sum of H . H and H ^ H", 200, 1e-13)
def _prop_2_6(t, rng, trials, tol, K):
    for d in range(1, 6):
        S, A = symmetrizer(d, 2), antisymmetrizer(d, 2)
        W = np.hstack([sym_basis(d, 2).embed(), asym_basis(d, 2).embed()])
        t.equal(_err(S + A, np.eye(d * d)), tol, "S_2 + A_2 = I", d=d)
        t.equal(_err(S @ A, np.zeros_like(S)), tol, "S_2 A_2 = 0", d=d)
        t.equal(_err(W.conj().T @ W, np.eye(d * d)), tol, "joined bases form a unitary", d=d)
    for trial in range(trials):
        d = int(rng.integers(1, 6))
        x = cnormal(rng, d * d)
        sx, ax = symmetrizer(d, 2) @ x, antisymmetrizer(d, 2) @ x
        t.equal(np.linalg.norm(x) ** 2 - np.linalg.norm(sx) ** 2 - np.linalg.norm(ax) ** 2, tol * _rel(x) ** 2, "Pythagoras", trial=trial)
    # for n = 3 the two subspaces do not exhaust the tensor power
    d = 2
    t.observe(n3_gap=float(np.linalg.norm(symmetrizer(d, 3) + antisymmetrizer(d, 3) - np.eye(d**3), 2)))


@suite("lemma-2.9", "sum a_ij e_i . e_j converges with norm^2 <= sum |a_ij|^2", 200, 1e-12)
def _lemma_2_9(t, rng, trials, tol, K):
    for trial in range(trials):
        N = int(rng.integers(1, 9))
        a = np.triu(cnormal(rng, (N, N)) / (1.0 + np.add.outer(np.arange(N), np.arange(N))))
        S = symmetrizer(N, 2)
        full = np.zeros(N * N, dtype=np.complex128)
        coords = np.zeros(sym_dim(N, 2), dtype=np.complex128)
        basis = sym_basis(N, 2)
        for i in range(N):
            for j in range(i, N):
                e = np.zeros(N * N)
                e[i * N + j] = 1.0
                full += a[i, j] * (S @ e)
                coords[basis.position[(i, j)]] = a[i, j] if i == j else a[i, j] / R2
        total = float(np.sum(np.abs(a) ** 2))
        exact = float(np.sum(np.abs(np.diag(a)) ** 2) + np.sum(np.abs(np.triu(a, 1)) ** 2) / 2)
        value = float(np.linalg.norm(full) ** 2)
        tag = dict(trial=trial, N=N)
        t.upper(value, total, tol * max(1.0, total), "norm^2 <= sum |a_ij|^2", **tag)
        t.equal(value - exact, tol * max(1.0, total), "norm^2 = sum |a_ii|^2 + sum_{i<j} |a_ij|^2 / 2", **tag)
        t.equal(_err(basis.embed_vector(coords), full), tol, "ONB coordinates a_ii, a_ij / sqrt2", **tag)


@suite("lemma-2.10", "||u|| ||v|| / sqrt2 <= ||u . v|| <= ||u|| ||v||, both sharp", 10000, 1e-12)
def _lemma_2_10(t, rng, trials, tol, K):
    worst_identity = 0.0
    for trial in range(trials):
        d = int(rng.integers(1, 9))
        u = cnormal(rng, d)
        v = cnormal(rng, d) if trial % 4 else u * cnormal(rng, 1)[0]
        nu, nv = np.linalg.norm(u), np.linalg.norm(v)
        value = float(np.linalg.norm(sym_tensor_of_vectors([u, v])))
        s = tol * max(1.0, nu * nv)
        t.upper(nu * nv / R2, value, s, "lower bound", trial=trial, d=d)
        t.upper(value, nu * nv, s, "upper bound", trial=trial, d=d)
        identity = value**2 - (nu**2 * nv**2 + abs(np.vdot(u, v)) ** 2) / 2
        worst_identity = max(worst_identity, abs(identity) / max(1.0, (nu * nv) ** 2))
        t.equal(identity, 1e-13 * max(1.0, (nu * nv) ** 2), "||u.v||^2 = (||u||^2 ||v||^2 + |<u,v>|^2)/2", trial=trial)
    e = np.eye(2)
    t.equal(_err(sym_tensor_of_vectors([e[0], e[1]]), [0, 1 / R2, 0]), tol, "e_0 . e_1 has coordinates (0, 1/sqrt2, 0)")
    u = np.array([0.6, 0.8j])
    t.equal(np.linalg.norm(sym_tensor_of_vectors([u, u])) - 1.0, tol, "u . u attains the upper bound")
    t.observe(worst_identity_error=worst_identity)


# --- operator products ------------------------------------------------------


@suite("prop-3.1", "H^.n and H^^n are invariant under the averaged tensor product", 100, 1e-13)
def _prop_3_1(t, rng, trials, tol, K):
    for trial in range(trials):
        n = 2 if trial % 2 == 0 else 3
        d = int(rng.integers(2, 5 if n == 2 else 4))
        mats = [_square(rng, d) for _ in range(n)]
        M = averaged_tensor(mats)
        scale = tol * _rel(M)
        tag = dict(trial=trial, n=n, d=d)
        for name, P in (("S_n", symmetrizer(d, n)), ("A_n", antisymmetrizer(d, n))):
            t.equal(_err(P @ M, M @ P), scale, f"averaged tensor commutes with {name}", **tag)
            t.equal(_err((np.eye(d**n) - P) @ M @ P, 0 * M), scale, f"range of {name} invariant", **tag)
        if n == 2:
            _, _, residual = block_decompose(*mats)
            t.equal(residual, scale, "off-diagonal couplings vanish", **tag)


@suite("prop-3.3", "||A_1 . ... . A_n|| <= prod ||A_i|| and ||A^.n|| = ||A||^n", 100, 1e-10)
def _prop_3_3(t, rng, trials, tol, K):
    for trial in range(trials):
        n = int(rng.integers(2, 4))
        d = int(rng.integers(2, 5))
        mats = [_square(rng, d) for _ in range(n)]
        norms = [norm(a) for a in mats]
        value = norm(sym_product(mats))
        bound = float(np.prod(norms))
        tag = dict(trial=trial, n=n, d=d)
        t.upper(value, bound, tol * max(1.0, bound), "||product|| <= prod ||A_i||", **tag)
        t.equal(norm(sym_product([mats[0]] * n)) - norms[0] ** n, tol * max(1.0, norms[0] ** n), "||A^.n|| = ||A||^n", **tag)
        pi = _perm(rng, n)
        t.equal(_err(sym_product([mats[p] for p in pi]), sym_product(mats)), tol, "permutation invariance", **tag)
        t.equal(_err(sym_product([np.eye(d)] * n), np.eye(sym_dim(d, n))), tol, "I . ... . I = I", **tag)
        kron = mats[0]
        for a in mats[1:]:
            kron = np.kron(kron, a)
        t.equal(norm(kron) - bound, tol * max(1.0, bound), "||A_1 (x) ... (x) A_n|| = prod ||A_i||", **tag)


@suite("formula-3x3", "2x2 factors give the explicit 3x3 matrix of A . B", 10000, 1e-12)
def _formula_3x3(t, rng, trials, tol, K):
    worst = 0.0
    for trial in range(trials):
        A, B = _square(rng, 2), _square(rng, 2)
        err = _err(sym_product([A, B]), closed_form_2x2(A, B))
        worst = max(worst, err)
        t.equal(err, tol, "entrywise match", trial=trial)
        if trial < 100:
            M = averaged_tensor([A, B])
            t.equal(_err(M, (np.kron(A, B) + np.kron(B, A)) / 2), tol, "4x4 averaged tensor", trial=trial)
    t.observe(max_entry_error=worst)


# --- basic properties -------------------------------------------------------


@suite("lemma-4.1", "(A . B)(C . D) = (AC . BD + AD . BC) / 2", 200, 1e-12)
def _lemma_4_1(t, rng, trials, tol, K):
    for trial in range(trials):
        d = int(rng.integers(2, 5))
        A, B, C, D = (_square(rng, d) for _ in range(4))
        lhs = sym_product([A, B]) @ sym_product([C, D])
        rhs = (sym_product([A @ C, B @ D]) + sym_product([A @ D, B @ C])) / 2
        t.equal(_err(lhs, rhs), tol * _rel(lhs), "product rule", trial=trial, d=d)


def _sym_power_of_subspace(V, n):
    """Orthonormal basis (ONB coordinates) of the span of v_i1 . ... . v_in for columns v of V."""
    m = V.shape[1]
    cols = []
    for idx in itertools.combinations_with_replacement(range(m), n):
        cols.append(sym_tensor_of_vectors([V[:, i] for i in idx]))
    q, _ = np.linalg.qr(np.array(cols).T)
    return q


@suite("prop-4.3", "a common invariant subspace V gives an invariant .^n V", 50, 1e-12)
def _prop_4_3(t, rng, trials, tol, K):
    for trial in range(trials):
        n = 2 if trial % 2 == 0 else 3
        d = int(rng.integers(3, 5))
        m = int(rng.integers(1, d))
        U = unitary(rng, d)
        mats = [U @ np.triu(_square(rng, d)) @ U.conj().T for _ in range(n)]
        V = U[:, :m]
        for a in mats:
            t.equal(_err(a @ V - V @ (V.conj().T @ a @ V), 0 * V), tol * _rel(a), "V invariant for each factor", trial=trial)
        W = _sym_power_of_subspace(V, n)
        T = sym_product(mats)
        leak = T @ W - W @ (W.conj().T @ T @ W)
        t.equal(np.linalg.norm(leak, 2), tol * _rel(T), ".^n V invariant for the product", trial=trial, n=n, d=d, m=m)


@suite("prop-4.4", "(A_1 . ... . A_n)^* = A_1^* . ... . A_n^*, and likewise for ^", 100, 1e-13)
def _prop_4_4(t, rng, trials, tol, K):
    for trial in range(trials):
        n = int(rng.integers(2, 4))
        d = int(rng.integers(2, 5))
        mats = [_square(rng, d) for _ in range(n)]
        adj = [a.conj().T for a in mats]
        tag = dict(trial=trial, n=n, d=d)
        T = sym_product(mats)
        t.equal(_err(T.conj().T, sym_product(adj)), tol * _rel(T), "symmetric adjoint", **tag)
        W = asym_product(mats)
        t.equal(_err(W.conj().T, asym_product(adj)), tol * _rel(W), "antisymmetric adjoint", **tag)


def remark_4_5_matrix(A):
    """The displayed 3x3 matrix of A . A^* for 2x2 A."""
    (a11, a12), (a21, a22) = np.asarray(A, dtype=np.complex128)
    c = np.conj
    return np.array(
        [
            [abs(a11) ** 2, (a11 * c(a21) + c(a11) * a12) / R2, a12 * c(a21)],
            [
                (a11 * c(a12) + c(a11) * a21) / R2,
                (a11 * c(a22) + c(a11) * a22 + abs(a12) ** 2 + abs(a21) ** 2) / 2,
                (a12 * c(a22) + c(a21) * a22) / R2,
            ],
            [a21 * c(a12), (a21 * c(a22) + c(a12) * a22) / R2, abs(a22) ** 2],
        ]
    )


@suite("remark-4.5", "A . A^* is selfadjoint, with the displayed 3x3 matrix for 2x2 A", 200, 1e-12)
def _remark_4_5(t, rng, trials, tol, K):
    for trial in range(trials):
        d = 2 if trial % 2 == 0 else int(rng.integers(3, 6))
        A = _square(rng, d)
        T = sym_product([A, A.conj().T])
        t.equal(_err(T, T.conj().T), tol * _rel(T), "selfadjoint", trial=trial, d=d)
        if d == 2:
            t.equal(_err(T, remark_4_5_matrix(A)), tol * _rel(T), "displayed matrix", trial=trial)


def normality_defect(T):
    return float(np.linalg.norm(T @ T.conj().T - T.conj().T @ T, 2))


@suite("thm-4.6", "selfadjoint, commuting normal and unitary factors give selfadjoint, normal and unitary products", 100, 1e-11)
def _thm_4_6(t, rng, trials, tol, K):
    for trial in range(trials):
        n = int(rng.integers(2, 4))
        d = int(rng.integers(2, 5))
        tag = dict(trial=trial, n=n, d=d)
        T = sym_product([hermitian(rng, d) for _ in range(n)])
        t.equal(_err(T, T.conj().T), tol * _rel(T), "selfadjoint factors", **tag)
        # commuting normals: one shared unitary, independent eigenvalues
        U = unitary(rng, d)
        T = sym_product([(U * cnormal(rng, d)) @ U.conj().T for _ in range(n)])
        t.equal(normality_defect(T), tol * max(1.0, norm(T) ** 2), "commuting normal factors: normality defect", **tag)
        T = sym_product([unitary(rng, d)] * n)
        t.equal(_err(T.conj().T @ T, np.eye(T.shape[0])), tol, "U^.n unitary", **tag)


GALLERY_NORMAL = (
    np.array([[1, 1j], [1j, 1]]),
    np.array([[1, -1], [1, 1]], dtype=np.complex128),
    np.array(
        [
            [1, -(1 - 1j) / R2, -1j],
            [(1 + 1j) / R2, 1, -(1 - 1j) / R2],
            [1j, (1 + 1j) / R2, 1],
        ]
    ),
)
GALLERY_UNITARY = (
    np.eye(2, dtype=np.complex128),
    np.array([[0, -1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1 / R2, 0], [1 / R2, 0, -1 / R2], [0, 1 / R2, 0]], dtype=np.complex128),
)


@suite("gallery-4", "noncommuting normals can give a non-normal product; unitaries can give a non-unitary product", 50, 1e-12)
def _gallery_4(t, rng, trials, tol, K):
    A, B, shown = GALLERY_NORMAL
    T = sym_product([A, B])
    t.equal(normality_defect(A) + normality_defect(B), tol, "both factors normal")
    t.record(np.linalg.norm(A @ B - B @ A) - 0.1, "factors do not commute")
    t.equal(_err(T, shown), tol, "product matches the displayed matrix")
    defect = normality_defect(T)
    t.record(defect - 0.1, "product is not normal (defect > 0.1)")
    A, B, shown = GALLERY_UNITARY
    T = sym_product([A, B])
    t.equal(_err(A.conj().T @ A, np.eye(2)) + _err(B.conj().T @ B, np.eye(2)), tol, "both factors unitary")
    t.equal(_err(T, shown), tol, "product matches the displayed matrix")
    sv = np.linalg.svd(T, compute_uv=False)
    t.record(float(np.max(np.abs(sv - 1.0))) - 0.1, "product has a singular value away from 1")
    for trial in range(trials):
        d = int(rng.integers(2, 5))
        H1, H2 = hermitian(rng, d), hermitian(rng, d)
        T = sym_product([H1, H2])
        t.equal(normality_defect(T), tol * max(1.0, norm(T) ** 2), "noncommuting selfadjoint pair: product normal", trial=trial)
    t.observe(normal_pair_defect=defect, unitary_pair_singular_values=sorted(float(s) for s in sv))


@suite("prop-4.9", "2 P . Q is an orthogonal projection other than 0 and I when PQ = QP = 0", 100, 1e-12)
def _prop_4_9(t, rng, trials, tol, K):
    def check(P, Q, x, y, **tag):
        T = 2 * sym_product([P, Q])
        t.equal(_err(T @ T, T), tol, "idempotent", **tag)
        t.equal(_err(T, T.conj().T), tol, "selfadjoint", **tag)
        t.record(np.linalg.norm(T, 2) - 0.5, "not 0", **tag)
        t.record(np.linalg.norm(np.eye(T.shape[0]) - T, 2) - 0.5, "not I", **tag)
        xy = sym_tensor_of_vectors([x, y])
        xx = sym_tensor_of_vectors([x, x])
        t.equal(_err(T @ xy, xy), tol, "x . y fixed", **tag)
        t.equal(_err(T @ xx, 0 * xx), tol, "x . x annihilated", **tag)

    e = np.eye(2)
    check(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), e[0], e[1], pair="diag(1,0), diag(0,1)")
    for trial in range(trials):
        d = int(rng.integers(2, 6))
        U = unitary(rng, d)
        p = int(rng.integers(1, d))
        q = int(rng.integers(1, d - p + 1))
        P = U[:, :p] @ U[:, :p].conj().T
        Q = U[:, p : p + q] @ U[:, p : p + q].conj().T
        check(P, Q, U[:, 0], U[:, p], trial=trial, d=d, p=p, q=q)


@suite("prop-4.10", "C-symmetric factors give C^.n-symmetric products", 100, 1e-12)
def _prop_4_10(t, rng, trials, tol, K):
    C = Conjugation()
    for trial in range(trials):
        n = int(rng.integers(2, 4))
        d = int(rng.integers(2, 5))
        mats = [complex_symmetric(rng, d) for _ in range(n)]
        tag = dict(trial=trial, n=n, d=d)
        kron = mats[0]
        for a in mats[1:]:
            kron = np.kron(kron, a)
        t.record(1.0 if is_c_symmetric(kron, C, tol) else -1.0, "tensor product C^(x)n-symmetric", **tag)
        T = sym_product(mats)
        t.equal(_err(T, T.T), tol * _rel(T), "symmetric product C^.n-symmetric", **tag)
        # the symmetric ONB is real, so C^(x)n preserves H^.n and acts componentwise on it
        t.equal(float(np.max(np.abs(sym_basis(d, n).embed().imag))), 0.0, "symmetric basis is real", **tag)


# --- norms and spectral radius ----------------------------------------------


@suite("thm-5.1a", "sup ||Ax|| ||Bx|| / sqrt2 <= ||A . B||, sharp", 200, 1e-12)
def _thm_5_1a(t, rng, trials, tol, K):
    for trial in range(trials):
        d = int(rng.integers(2, 5))
        checks._norm_lower_2(t, _square(rng, d), _square(rng, d), rng, 16, tol, trial=trial, d=d)
    a, b = checks.WITNESS_HALF_ROOT2
    x = np.array([1.0, 0.0])
    value = norm(sym_product([a, b]))
    t.equal(value - 1 / R2, tol, "witness norm 1/sqrt2", pair="witness")
    t.equal(np.linalg.norm(a @ x) * np.linalg.norm(b @ x) / R2 - value, tol, "witness attains equality", pair="witness")
    t.upper(1 / R2, 1.0, tol, "A = B = I: 1/sqrt2 <= 1", pair="identity")


@suite("thm-5.1b", "A, B != 0 implies A . B != 0", 200, 1e-12)
def _thm_5_1b(t, rng, trials, tol, K):
    for trial in range(trials):
        d = int(rng.integers(2, 6))
        if trial % 3 == 0:
            A, B = _square(rng, d), _square(rng, d)
            kind = "generic"
        elif trial % 3 == 1:
            A, B = checks.complementary_pair(rng, d)
            kind = "complementary supports"
        else:
            u, v = cnormal(rng, d), cnormal(rng, d)
            A, B = np.outer(u, u.conj()), np.outer(v, cnormal(rng, d).conj())
            kind = "rank one"
        checks._nonzero_product(t, A, B, tol, trial=trial, d=d, kind=kind)
        u = cnormal(rng, d)
        R = np.outer(u, cnormal(rng, d).conj())
        t.equal(norm(sym_product([R, R])) - norm(R) ** 2, tol * max(1.0, norm(R) ** 2), "rank one: ||A . A|| = ||A||^2", trial=trial)
        P = np.outer(u, u.conj()) / np.vdot(u, u).real
        t.equal(np.max(np.abs(asym_product([P, P]))), tol, "rank-one projection: P ^ P = 0", trial=trial)
    e = np.eye(2)
    value = norm(sym_product([np.outer(e[0], e[0]), np.outer(e[1], e[1])]))
    t.equal(value - 0.5, tol, "e_0 e_0^* . e_1 e_1^* has norm 1/2")


@suite("thm-5.1c", "rho(A^.n) = rho(A)^n", 200, 1e-6)
def _thm_5_1c(t, rng, trials, tol, K):
    for trial in range(trials):
        d = int(rng.integers(1, 6))
        n = 2 + trial % 2
        A = _square(rng, d)
        rho = float(np.max(np.abs(general_eigen(A).eigenvalues)))
        T = sym_product([A] * n)
        rho_n = float(np.max(np.abs(general_eigen(T).eigenvalues)))
        tag = dict(trial=trial, d=d, n=n)
        t.equal(rho_n - rho**n, tol * max(rho**n, 1e-300), "rho(A^.n) = rho(A)^n (relative)", **tag)
        for k in (1, 4, 16):
            t.upper(rho_n, gelfand_estimate(T, k), tol * max(1.0, rho_n), "rho <= ||T^k||^(1/k)", k=k, **tag)


@suite("thm-5.2a", "orthogonal ranges: ||A_1 . ... . A_n|| <= prod ||A_i|| / sqrt(n!)", 200, 1e-12)
def _thm_5_2a(t, rng, trials, tol, K):
    for trial in range(trials):
        checks._orthogonal_ranges(t, rng, 2 + trial % 2, 6, tol, trial=trial)
    checks._range_witnesses(t, tol, upper=True, lower=False)


@suite("thm-5.2b", "(ker B)^perp in ker A, ran B perp ran A: ||A|| ||B|| / 2 <= ||A . B|| <= ||A|| ||B|| / sqrt2", 500, 1e-12)
def _thm_5_2b(t, rng, trials, tol, K):
    rejected = 0
    for trial in range(trials):
        rejected += checks._kernel_range(t, rng, 6, tol, trial=trial)
    checks._range_witnesses(t, tol, upper=True, lower=True)
    t.observe(rejected_samples=rejected)


# --- spectra ----------------------------------------------------------------


def _eigs(M):
    return general_eigen(M).eigenvalues


def _match(t, a, b, tol, check, **tag):
    """Multiset equality within tol; the margin is tol minus the pairing distance."""
    ok = multisets_match(a, b, tol)
    margin = tol - multiset_distance(a, b)
    t.record(margin if ok else min(margin, -math.ulp(tol)), check, **tag)


def _contains(t, sub, sup, tol, check, **tag):
    ok = multiset_contains(sub, sup, tol)
    margin = tol - containment_distance(sub, sup)
    t.record(margin if ok else min(margin, -math.ulp(tol)), check, **tag)


@suite("thm-6.1", "sigma(A (x) B) = sigma(A) sigma(B) as multisets", 100, 1e-7)
def _thm_6_1(t, rng, trials, tol, K):
    for trial in range(trials):
        da, db = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        A, B = _square(rng, da), _square(rng, db)
        scale = max(1.0, norm(A) * norm(B))
        _match(t, _eigs(np.kron(A, B)), product_set(_eigs(A), _eigs(B)), tol * scale, "eigenvalue multisets match", trial=trial, da=da, db=db)


@suite("prop-6.2", "sigma of the averaged tensor is sigma(A . B) joined with sigma(A ^ B)", 100, 1e-7)
def _prop_6_2(t, rng, trials, tol, K):
    for trial in range(trials):
        d = int(rng.integers(1, 5))
        A, B = _square(rng, d), _square(rng, d)
        sym, asym, residual = block_decompose(A, B)
        scale = max(1.0, norm(A) * norm(B))
        t.equal(residual, tol * scale, "block diagonal", trial=trial, d=d)
        union = multiset_union(_eigs(sym), _eigs(asym)) if asym.size else _eigs(sym)
        _match(t, _eigs(averaged_tensor([A, B])), union, tol * scale, "union law", trial=trial, d=d)


def _set_distance(a, b):
    """Hausdorff distance between two finite point sets (multiplicity ignored)."""
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.size == 0 or b.size == 0:
        return 0.0 if a.size == b.size else math.inf
    dist = np.abs(a[:, None] - b[None, :])
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


@suite("thm-6.3", "sigma(A . I) in (sigma(A) + sigma(A))/2 and sigma(A . A) in sigma(A) sigma(A); equality for normal A", 200, 1e-7)
def _thm_6_3(t, rng, trials, tol, K):
    for trial in range(trials):
        d = int(rng.integers(1, 5))
        is_normal = trial % 2 == 1
        A = normal_matrix(rng, d) if is_normal else _square(rng, d)
        ev = _eigs(A)
        s = tol * max(1.0, norm(A) ** 2)
        half = sum_set(ev, ev, 0.5)
        prod = product_set(ev, ev)
        sum_eigs = _eigs(sym_product([A, np.eye(d)]))
        sq_eigs = _eigs(sym_product([A, A]))
        tag = dict(trial=trial, d=d, normal=is_normal)
        _contains(t, sum_eigs, half, s, "sigma(A . I) within (sigma(A) + sigma(A))/2", **tag)
        _contains(t, sq_eigs, prod, s, "sigma(A . A) within sigma(A) sigma(A)", **tag)
        if is_normal:
            t.record(s - _set_distance(sum_eigs, half), "normal A: sigma(A . I) equals the sum set", **tag)
            t.record(s - _set_distance(sq_eigs, prod), "normal A: sigma(A . A) equals the product set", **tag)


# --- diagonal operators -----------------------------------------------------


@suite("eq-7.2", "L . M is diagonal with entries (lam_i mu_j + lam_j mu_i)/2, i <= j", 100, 1e-9)
def _eq_7_2(t, rng, trials, tol, K):
    got = _eigs(sym_product([np.diag([1.0, 2.0]), np.diag([3.0, 4.0])]))
    _match(t, got, [3, 5, 8], tol, "L = diag(1,2), M = diag(3,4) gives {3, 5, 8}")
    for trial in range(trials):
        N = int(rng.integers(1, 9))
        lam, mu = (cnormal(rng, N), cnormal(rng, N)) if trial % 2 else (rng.standard_normal(N), rng.standard_normal(N))
        T = sym_product([np.diag(lam), np.diag(mu)])
        scale = max(1.0, float(np.max(np.abs(lam)) * np.max(np.abs(mu))))
        t.equal(_err(T, np.diag(np.diag(T))), tol * scale, "product is diagonal", trial=trial, N=N)
        _match(t, diag_sym_spectrum(lam, mu, N), _eigs(T), tol * scale, "closed-form multiset matches eigenvalues", trial=trial, N=N)


@suite("prop-7.3", "D_1 . ... . D_n is diagonal with the symmetrized products of diagonal entries", 100, 1e-9)
def _prop_7_3(t, rng, trials, tol, K):
    for trial in range(trials):
        n = 2 + trial % 2
        N = int(rng.integers(1, 9))
        seqs = [cnormal(rng, N) for _ in range(n)]
        T = sym_product([np.diag(s) for s in seqs])
        scale = max(1.0, float(np.prod([np.max(np.abs(s)) for s in seqs])))
        _match(t, multi_diag_sym_spectrum(seqs, N), _eigs(T), tol * scale, "closed-form multiset matches eigenvalues", trial=trial, n=n, N=N)
        if n == 2:
            t.equal(_err(multi_diag_sym_spectrum(seqs, N), diag_sym_spectrum(*seqs, N)), tol, "n = 2 reduces to the two-factor formula", trial=trial)
        same = multi_diag_sym_spectrum([seqs[0]] * n, N)
        direct = [np.prod(seqs[0][list(idx.entries)]) for idx in enumerate_sym_indices(N, n)]
        t.equal(_err(same, direct), tol * scale, "equal sequences give plain products", trial=trial, n=n)


@suite("prop-7.1", checks.DIAG_STATEMENT, 1000, 1e-12)
def _prop_7_1(t, rng, trials, tol, K):
    for trial in range(trials):
        checks._diag_bound(t, rng, trial, tol)
    checks._diag_witnesses(t, tol)


# --- shift operators --------------------------------------------------------


@suite("thm-8.1", "S . S^* and S ^ S^* split into tridiagonal blocks with cosine spectra filling [-1, 1]", 1, 1e-10, K=40)
def _thm_8_1(t, rng, trials, tol, K):
    check_shift_blocks(K, tol, t)


def _mu_draw(rng, size, lo=0.0, hi=1.0):
    return moduli_in(rng, size, lo, hi)


def _norm_bounds(t, rng, trials, tol, K, adjoint):
    name = "S^* . M" if adjoint else "S . M"
    for trial in range(trials):
        mu = _mu_draw(rng, K + 1)
        value, lower, upper = norm_bounds_compressed(mu, K, adjoint)
        t.upper(lower, value, tol, f"||M|| / sqrt2 <= ||{name}||", trial=trial)
        t.upper(value, upper, tol, f"||{name}|| <= ||M||", trial=trial)
    delta = np.zeros(K + 1)
    delta[0] = 1.0
    value, _, _ = norm_bounds_compressed(delta, K, adjoint)
    t.equal(value - 1 / R2, tol, "M = diag(1, 0, 0, ...) attains 1/sqrt2")
    value, _, _ = norm_bounds_compressed(np.ones(K + 1), K, adjoint)
    t.upper(value, 1.0, tol, "M = I stays below 1")
    t.observe(identity_compressed_norm=value)


@suite("thm-9.1a", "||M|| / sqrt2 <= ||S . M|| <= ||M||", 20, 1e-12, K=20)
def _thm_9_1a(t, rng, trials, tol, K):
    _norm_bounds(t, rng, trials, tol, K, adjoint=False)


@suite("thm-9.1b", "0 is an eigenvalue of S . M: explicit kernel coefficients", 50, 1e-13, K=60)
def _thm_9_1b(t, rng, trials, tol, K):
    check_kernel_vector(np.ones(K + 2), K, tol, tally=t, label="mu = 1")
    zero = _mu_draw(rng, K + 2, 0.1, 1.0)
    zero[int(rng.integers(0, K + 1))] = 0.0
    check_kernel_vector(zero, K, tol, tally=t, label="one mu_i = 0")
    for trial in range(trials):
        check_kernel_vector(_mu_draw(rng, K + 2, 0.1, 1.0), K, tol, tally=t, label=trial)


@suite("thm-9.1c", "S . M has no eigenvalue other than 0", 100, 1e-12, K=30)
def _thm_9_1c(t, rng, trials, tol, K):
    verify_point_spectrum_SM(np.ones(K + 1), 0.3, K, tol, tally=t, label="mu = 1, lam = 0.3")
    for trial in range(trials):
        mu = _mu_draw(rng, K + 1, 0.1, 1.0) if trial % 2 else cnormal(rng, K + 1)
        lam = 1.0 if trial == 0 else cnormal(rng, 1)[0]
        verify_point_spectrum_SM(mu, lam, K, tol, tally=t, label=trial)


@suite("thm-9.2a", "||M|| / sqrt2 <= ||S^* . M|| <= ||M||", 20, 1e-12, K=20)
def _thm_9_2a(t, rng, trials, tol, K):
    _norm_bounds(t, rng, trials, tol, K, adjoint=True)


@suite("thm-9.2b", "every |lam| < |mu_0|/2 is an eigenvalue of S^* . M", 100, 1e-12, K=60)
def _thm_9_2b(t, rng, trials, tol, K):
    worst_ratio = 0.0
    for trial in range(trials):
        mu = _mu_draw(rng, K + 1)
        mu[0] = _mu_draw(rng, 1, 0.1, 1.0)[0]
        lam = abs(mu[0]) * rng.uniform(0.0, 0.45) * np.exp(2j * np.pi * rng.uniform())
        ev = backshift_eigenvector(mu, lam, K)
        tag = dict(trial=trial, ratio=abs(ev.ratio))
        t.upper(ev.residual, ev.tail_bound + ev.rounding, 0.0, "residual <= geometric tail + rounding", **tag)
        t.upper(ev.exact_tail, ev.tail_bound, 0.0, "exact truncation residual <= geometric tail", **tag)
        worst_ratio = max(worst_ratio, ev.residual / (ev.tail_bound + ev.rounding))
    mu = np.ones(K + 1)
    ev = backshift_eigenvector(mu, 0.0, K)
    t.equal(ev.residual, 0.0, "lam = 0: e_0 . e_0 is an exact eigenvector")
    mu[0] = 0.0
    ev = backshift_eigenvector(mu, 0.0, K)
    t.equal(ev.residual, 0.0, "mu_0 = 0: e_0 . e_0 spans the kernel")
    try:
        backshift_eigenvector(np.ones(K + 1), 0.5, K)
        boundary = "constructed"
    except ValueError:
        boundary = "rejected: the coefficient series diverges at |lam| = |mu_0|/2"
    t.observe(boundary=boundary, worst_residual_to_bound=worst_ratio)


# --- lower bounds for three factors -----------------------------------------


@suite("lemma-10.1", "||x . y . z|| / (||x|| ||y|| ||z||) lies in [1/sqrt6, 1], both sharp", 10000, 1e-12)
def _lemma_10_1(t, rng, trials, tol, K):
    bound = 1 / math.sqrt(6)
    low = math.inf
    for trial in range(trials):
        d = int(rng.integers(1, 6))
        ratio = checks.vector_ratio(checks._vector_draw(rng, d, 3, trial))
        low = min(low, ratio)
        t.upper(bound, ratio, tol, "ratio >= 1/sqrt6", trial=trial, d=d)
        t.upper(ratio, 1.0, tol, "ratio <= 1", trial=trial, d=d)
    e = np.eye(3, dtype=np.complex128)
    t.equal(checks.vector_ratio([e[0], e[1], e[2]]) - bound, tol, "orthonormal triple attains 1/sqrt6")
    u = cnormal(rng, 3)
    t.equal(checks.vector_ratio([u, u, u]) - 1.0, tol, "equal vectors attain 1")
    t.observe(min_ratio=low)


@suite("thm-10.3", "sup ||Ax|| ||Bx|| ||Cx|| / sqrt6 <= ||A . B . C||", 100, 1e-10)
def _thm_10_3(t, rng, trials, tol, K):
    low = math.inf
    for trial in range(trials):
        d = int(rng.integers(2, 5))
        mats = [_square(rng, d) for _ in range(3)]
        sup, _ = checks.sup_product_estimate(mats, rng, samples=32, steps=30)
        value = norm(sym_product(mats))
        low = min(low, value / sup)
        t.upper(sup / math.sqrt(6), value, tol * max(1.0, sup), "sup / sqrt6 <= ||A . B . C||", trial=trial, d=d)
    t.observe(min_ratio=low)
