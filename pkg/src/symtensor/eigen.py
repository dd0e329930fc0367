"""Dense eigensolvers: cyclic Jacobi for Hermitian matrices, Hessenberg + shifted QR otherwise."""

import numpy as np
from scipy.linalg import solve_triangular

from .errors import EigenConvergenceError

EPS = np.finfo(float).eps


def _round_robin(n):
    """Rounds of disjoint index pairs covering every pair (p < q) exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = sorted((min(p, q), max(p, q)) for p, q in pairs if p < n and q < n)
        if pairs:
            p, q = zip(*pairs)
            rounds.append((np.array(p), np.array(q)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(M, max_sweeps=60):
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Rotations are scheduled in round-robin order so that each round acts on
    disjoint index pairs and can be applied in one vectorized update.
    Returns (eigenvalues ascending, unitary eigenvector matrix, sweeps).
    """
    A = np.array(M, dtype=np.complex128)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    if n == 0:
        return np.zeros(0), V, 0
    A = 0.5 * (A + A.conj().T)
    scale = np.linalg.norm(A)
    if scale == 0.0:
        return np.zeros(n), V, 0
    target = EPS * scale * 1e-2
    rounds = _round_robin(n)
    sweeps = 0
    while True:
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            break
        if sweeps >= max_sweeps:
            raise EigenConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})")
        sweeps += 1
        for p, q in rounds:
            apq = A[p, q]
            mag = np.abs(apq)
            app = A[p, p].real
            aqq = A[q, q].real
            # entries far below the diagonal scale cannot move the eigenvalues
            active = (mag > EPS * 1e-3 * (np.abs(app) + np.abs(aqq))) & (mag >= 1e-300)
            if not active.any():
                A[p, q] = A[q, p] = 0.0
                continue
            safe = np.where(active, mag, 1.0)
            phase = np.where(active, apq / safe, 1.0)
            tau = (aqq - app) / (2.0 * safe)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # W = diag(1, conj(phase)) @ [[c, s], [-s, c]] acting on columns p, q
            w_pp, w_pq = c, s
            w_qp, w_qq = -s * np.conj(phase), c * np.conj(phase)
            cp = A[:, p].copy()
            cq = A[:, q].copy()
            A[:, p] = cp * w_pp + cq * w_qp
            A[:, q] = cp * w_pq + cq * w_qq
            rp = A[p, :].copy()
            rq = A[q, :].copy()
            A[p, :] = np.conj(w_pp)[:, None] * rp + np.conj(w_qp)[:, None] * rq
            A[q, :] = np.conj(w_pq)[:, None] * rp + np.conj(w_qq)[:, None] * rq
            A[p, q] = A[q, p] = 0.0
            A[p, p] = A[p, p].real
            A[q, q] = A[q, q].real
            vp = V[:, p].copy()
            vq = V[:, q].copy()
            V[:, p] = vp * w_pp + vq * w_qp
            V[:, q] = vp * w_pq + vq * w_qq
    w = np.diag(A).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order], sweeps


def hessenberg(M):
    """Householder reduction M = Q H Q^* with H upper Hessenberg."""
    H = np.array(M, dtype=np.complex128)
    n = H.shape[0]
    Q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = H[k + 1 :, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        # H <- P H P with P = I - 2 v v^*
        H[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1 :, :])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v.conj())
        Q[:, k + 1 :] -= 2.0 * np.outer(Q[:, k + 1 :] @ v, v.conj())
        H[k + 2 :, k] = 0.0
    return H, Q


def _givens(x, y):
    """c real, s complex with [[c, s], [-conj(s), c]] @ [x, y] = [r, 0]."""
    ax = abs(x)
    ay = abs(y)
    if ay == 0.0:
        return 1.0, 0.0
    if ax == 0.0:
        return 0.0, np.conj(y) / ay
    r = np.hypot(ax, ay)
    return ax / r, (x / ax) * np.conj(y) / r


def schur(M, max_iter_factor=100):
    """Complex Schur form M = Z T Z^* by Hessenberg reduction and shifted QR.

    Returns (T, Z, iterations).  Raises EigenConvergenceError past
    ``max_iter_factor * n`` QR steps.
    """
    H, Z = hessenberg(M)
    n = H.shape[0]
    if n <= 1:
        return H, Z, 0
    norm_h = max(np.linalg.norm(H), np.finfo(float).tiny)
    cap = max_iter_factor * n
    total = 0
    since_deflation = 0
    hi = n - 1
    while hi > 0:
        lo = hi
        while lo > 0:
            sub = abs(H[lo, lo - 1])
            ref = abs(H[lo, lo]) + abs(H[lo - 1, lo - 1])
            if ref == 0.0:
                ref = norm_h
            if sub <= EPS * ref:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            since_deflation = 0
            continue
        if total >= cap:
            raise EigenConvergenceError(f"shifted QR did not converge within {cap} iterations")
        total += 1
        since_deflation += 1
        if since_deflation % 11 == 0:
            # exceptional shift to break cycles
            mu = H[hi, hi] + 0.75 * abs(H[hi, hi - 1]) * (1.0 + 1.0j)
        else:
            a, b = H[hi - 1, hi - 1], H[hi - 1, hi]
            c, d = H[hi, hi - 1], H[hi, hi]
            half = 0.5 * (a - d)
            disc = np.sqrt(half * half + b * c)
            mu1 = 0.5 * (a + d) + disc
            mu2 = 0.5 * (a + d) - disc
            mu = mu1 if abs(mu1 - d) < abs(mu2 - d) else mu2
        idx = np.arange(lo, hi + 1)
        H[idx, idx] -= mu
        rots = []
        for k in range(lo, hi):
            c, s = _givens(H[k, k], H[k + 1, k])
            rk = H[k, k:].copy()
            rk1 = H[k + 1, k:].copy()
            H[k, k:] = c * rk + s * rk1
            H[k + 1, k:] = -np.conj(s) * rk + c * rk1
            H[k + 1, k] = 0.0
            rots.append((k, c, s))
        for k, c, s in rots:
            top = min(k + 2, hi) + 1
            ck = H[:top, k].copy()
            ck1 = H[:top, k + 1].copy()
            # right-multiply by G^* = [[c, -s], [conj(s), c]]
            H[:top, k] = c * ck + np.conj(s) * ck1
            H[:top, k + 1] = -s * ck + c * ck1
            zk = Z[:, k].copy()
            zk1 = Z[:, k + 1].copy()
            Z[:, k] = c * zk + np.conj(s) * zk1
            Z[:, k + 1] = -s * zk + c * zk1
        H[idx, idx] += mu
    T = np.triu(H)
    return T, Z, total


def schur_eigenvectors(T, Z):
    """Eigenvectors of Z T Z^* by back substitution on the triangular factor."""
    n = T.shape[0]
    X = np.zeros((n, n), dtype=np.complex128)
    smin = max(EPS * np.linalg.norm(T), np.finfo(float).tiny)
    for k in range(n):
        lam = T[k, k]
        x = np.zeros(n, dtype=np.complex128)
        x[k] = 1.0
        if k > 0:
            U = T[:k, :k] - lam * np.eye(k)
            diag = np.diagonal(U).copy()
            small = np.abs(diag) < smin
            diag[small] = smin
            U[np.arange(k), np.arange(k)] = diag
            x[:k] = solve_triangular(U, -T[:k, k], lower=False)
        X[:, k] = Z @ x
    norms = np.linalg.norm(X, axis=0)
    norms[norms == 0] = 1.0
    return X / norms
