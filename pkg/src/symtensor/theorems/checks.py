"""Norm inequalities for symmetric products and the lower-bound sampler.

Each public ``verify_*`` returns a VerifyReport.  The underscored helpers
record into a caller's Tally so the suites can share them.
"""

import math

import numpy as np

from ..basis import sym_tensor_of_vectors
from ..products import sym_product
from ..spectral import operator_norm
from .report import Tally
from .sampling import cnormal, rng_for, unit_vector, unitary

R2 = math.sqrt(2.0)

# witness pairs for the sharp constants
WITNESS_HALF_ROOT2 = (
    np.array([[1, 0], [0, 0]], dtype=np.complex128),
    np.array([[0, 0], [1, 0]], dtype=np.complex128),
)
WITNESS_ROOT2_MINUS_1 = (
    np.diag([1.0, R2 - 1.0]).astype(np.complex128),
    np.diag([1.0 - R2, 1.0]).astype(np.complex128),
)
WITNESS_HALF = (
    np.diag([1.0, 0.0]).astype(np.complex128),
    np.diag([0.0, 1.0]).astype(np.complex128),
)


def norm(M):
    return operator_norm(M).value


def _scale(*values):
    return max(1.0, *[float(v) for v in values])


def sup_product_estimate(mats, rng, samples=64, steps=40):
    """Lower estimate of sup_{|x|=1} prod ||A_i x||.

    Random starts plus the right singular vectors, then a fixed-point ascent
    on sum log ||A_i x||.  Any value returned is attained, so it never
    overstates the supremum.
    """
    d = mats[0].shape[1]
    starts = [unit_vector(rng, d) for _ in range(samples)]
    for a in mats:
        _, _, vh = np.linalg.svd(a)
        starts.append(vh[0].conj())
    starts.extend(np.eye(d, dtype=np.complex128))

    def value(x):
        return float(np.prod([np.linalg.norm(a @ x) for a in mats]))

    best_x = max(starts, key=value)
    best = value(best_x)
    x = best_x
    for _ in range(steps):
        grad = np.zeros(d, dtype=np.complex128)
        for a in mats:
            ax = a @ x
            nrm = np.vdot(ax, ax).real
            if nrm == 0.0:
                break
            grad += a.conj().T @ ax / nrm
        else:
            gn = np.linalg.norm(grad)
            if gn == 0.0:
                break
            x = grad / gn
            val = value(x)
            if val > best:
                best, best_x = val, x
            continue
        break
    return best, best_x


# --- lower bound with sqrt(2) ----------------------------------------------


def _norm_lower_2(t, A, B, rng, samples, tol, **tag):
    """sup_x ||Ax|| ||Bx|| / sqrt(2) <= ||A . B|| over sampled unit x."""
    value = norm(sym_product([A, B]))
    scale = _scale(norm(A) * norm(B))
    lhs = 0.0
    for _ in range(samples):
        x = unit_vector(rng, A.shape[0])
        lhs = max(lhs, np.linalg.norm(A @ x) * np.linalg.norm(B @ x) / R2)
    est, _ = sup_product_estimate([A, B], rng, samples=0, steps=20)
    lhs = max(lhs, est / R2)
    t.upper(lhs, value, tol * scale, "||Ax|| ||Bx|| / sqrt2 <= ||A.B||", **tag)
    return value


def verify_norm_lower_2(A, B, trials=200, seed=0, tol=1e-12):
    """sup over unit x of ||Ax|| ||Bx|| / sqrt(2) never exceeds ||A . B||; the witness pair attains it."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    rng = rng_for(seed)
    t = Tally()
    _norm_lower_2(t, A, B, rng, trials, tol, pair="input")
    wa, wb = WITNESS_HALF_ROOT2
    x = np.array([1.0, 0.0])
    lhs = np.linalg.norm(wa @ x) * np.linalg.norm(wb @ x) / R2
    t.equal(lhs - norm(sym_product([wa, wb])), tol, "witness attains equality at 1/sqrt2", pair="witness")
    t.equal(norm(sym_product([wa, wb])) - 1 / R2, tol, "witness norm equals 1/sqrt2", pair="witness")
    return t.report("thm-5.1a", "||Ax|| ||Bx|| / sqrt(2) <= ||A . B||, sharp", seed, tol)


# --- nonzero products ---------------------------------------------------------


def _nonzero_product(t, A, B, tol, **tag):
    """||A . B|| > 0 and at least the bound from the (u + v)/||u + v|| recipe."""
    value = norm(sym_product([A, B]))
    scale = _scale(norm(A) * norm(B))
    t.record(value - tol * scale, "||A.B|| > 0", **tag)
    _, _, vha = np.linalg.svd(A)
    _, _, vhb = np.linalg.svd(B)
    u = vha[0].conj()
    v = vhb[0].conj()
    w = u + v
    if np.linalg.norm(w) < 1e-8:
        w = u - v
    x = w / np.linalg.norm(w)
    bound = np.linalg.norm(A @ x) * np.linalg.norm(B @ x) / R2
    t.upper(bound, value, tol * scale, "recipe lower bound <= ||A.B||", **tag)
    return value


def complementary_pair(rng, d):
    """A = X P and B = Y (I - P) for a random projection P: each kills the other's support."""
    w = unitary(rng, d)
    p = int(rng.integers(1, d))
    A = cnormal(rng, (d, d)) @ (w[:, :p] @ w[:, :p].conj().T)
    B = cnormal(rng, (d, d)) @ (w[:, p:] @ w[:, p:].conj().T)
    return A, B


def verify_nonzero_product(A, B, tol=1e-12, seed=0):
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if not np.any(A) or not np.any(B):
        raise ValueError("both factors must be nonzero")
    t = Tally()
    _nonzero_product(t, A, B, tol, pair="input")
    return t.report("thm-5.1b", "A, B != 0 implies A . B != 0", seed, tol)


# --- orthogonal ranges -------------------------------------------------------


def _blocks(rng, d, parts):
    cuts = np.sort(rng.choice(np.arange(1, d), size=parts - 1, replace=False))
    edges = [0, *cuts.tolist(), d]
    return [slice(edges[i], edges[i + 1]) for i in range(parts)]


def orthogonal_range_family(rng, d, n):
    """n operators whose ranges are mutually orthogonal blocks of a random ONB."""
    v = unitary(rng, d)
    return [v[:, blk] @ cnormal(rng, (blk.stop - blk.start, d)) for blk in _blocks(rng, d, n)]


def kernel_range_pair(rng, d):
    """A, B with (ker B)^perp inside ker A and ran B orthogonal to ran A."""
    w = unitary(rng, d)
    v = unitary(rng, d)
    p = int(rng.integers(1, d))
    q = int(rng.integers(1, d))
    A = v[:, :q] @ cnormal(rng, (q, p)) @ w[:, :p].conj().T
    B = v[:, q:] @ cnormal(rng, (d - q, d - p)) @ w[:, p:].conj().T
    return A, B


def kernel_range_hypotheses(A, B, tol=1e-10):
    """Residuals of the two hypotheses: A restricted to (ker B)^perp, and A^* B."""
    proj = np.linalg.pinv(B) @ B
    scale = max(1.0, norm(A) * max(1.0, norm(B)))
    return np.linalg.norm(A @ proj) <= tol * scale and np.linalg.norm(A.conj().T @ B) <= tol * scale


def _orthogonal_ranges(t, rng, n, d, tol, **tag):
    mats = orthogonal_range_family(rng, d, n)
    norms = [norm(a) for a in mats]
    value = norm(sym_product(mats))
    bound = float(np.prod(norms)) / math.sqrt(math.factorial(n))
    t.upper(value, bound, tol * _scale(np.prod(norms)), "orthogonal ranges: ||prod|| <= prod ||A_i|| / sqrt(n!)", n=n, **tag)


def _kernel_range(t, rng, d, tol, **tag):
    """Both bounds for a pair satisfying the kernel/range hypotheses; returns resamples needed."""
    rejected = 0
    while True:
        A, B = kernel_range_pair(rng, d)
        if kernel_range_hypotheses(A, B):
            break
        rejected += 1
    na, nb = norm(A), norm(B)
    value = norm(sym_product([A, B]))
    s = tol * _scale(na * nb)
    t.upper(na * nb / 2, value, s, "kernel/range pair: ||A|| ||B|| / 2 <= ||A.B||", **tag)
    t.upper(value, na * nb / R2, s, "kernel/range pair: ||A.B|| <= ||A|| ||B|| / sqrt2", **tag)
    return rejected


def _range_witnesses(t, tol, upper=True, lower=True):
    if upper:
        a, b = WITNESS_HALF_ROOT2
        t.equal(norm(sym_product([a, b])) - 1 / R2, tol, "upper bound attained: 1/sqrt2", pair="shift-corner witness")
    if lower:
        a, b = WITNESS_HALF
        t.equal(norm(sym_product([a, b])) - 0.5, tol, "lower bound attained: 1/2", pair="diag(1,0), I - diag(1,0)")


def verify_orthogonal_ranges(n=2, trials=100, seed=0, tol=1e-12, d=6):
    """Orthogonal ranges give ||A_1 . ... . A_n|| <= prod ||A_i|| / sqrt(n!); kernel/range pairs add ||A|| ||B|| / 2 below."""
    if not 2 <= n <= 3:
        raise ValueError("n must be 2 or 3")
    rng = rng_for(seed)
    t = Tally()
    rejected = 0
    for trial in range(trials):
        _orthogonal_ranges(t, rng, n, d, tol, trial=trial)
        if n == 2:
            rejected += _kernel_range(t, rng, d, tol, trial=trial)
    _range_witnesses(t, tol, upper=True, lower=n == 2)
    t.observe(rejected_samples=rejected, d=d, n=n)
    return t.report("thm-5.2", "orthogonal ranges bound ||A_1 . ... . A_n|| by prod ||A_i|| / sqrt(n!)", seed, tol)


# --- diagonal operators --------------------------------------------------------


def _diag_pair(rng, trial):
    if trial % 2:
        # the extremal two-point family L = diag(1, s), M = diag(-s, 1)
        s = rng.uniform(0.0, 1.0)
        ph = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, 2))
        return np.array([1.0, s * ph[0]]), np.array([-s * ph[1], 1.0])
    size = int(rng.integers(1, 17))
    return cnormal(rng, size), cnormal(rng, size)


def _diag_bound(t, rng, trial, tol):
    lam, mu = _diag_pair(rng, trial)
    L, M = np.diag(lam), np.diag(mu)
    nl, nm = float(np.max(np.abs(lam))), float(np.max(np.abs(mu)))
    value = norm(sym_product([L, M]))
    s = tol * _scale(nl * nm)
    t.upper((R2 - 1.0) * nl * nm, value, s, "(sqrt2-1) ||L|| ||M|| <= ||L.M||", trial=trial, size=len(lam))
    t.upper(value, nl * nm, s, "||L.M|| <= ||L|| ||M||", trial=trial, size=len(lam))


def _diag_witnesses(t, tol):
    L, M = WITNESS_ROOT2_MINUS_1
    t.equal(norm(sym_product([L, M])) - (R2 - 1.0), tol, "lower bound attained at sqrt2 - 1", pair="witness")
    I2 = np.eye(2)
    t.equal(norm(sym_product([I2, I2])) - 1.0, tol, "upper bound attained by L = M = I", pair="identity")


DIAG_STATEMENT = "(sqrt2 - 1) ||L|| ||M|| <= ||L . M|| <= ||L|| ||M|| for diagonal L, M, sharp"


def verify_diag_norm_bound(trials=1000, seed=0, tol=1e-12):
    """(sqrt2 - 1) ||L|| ||M|| <= ||L . M|| <= ||L|| ||M|| for diagonal L, M; both ends attained."""
    rng = rng_for(seed)
    t = Tally()
    for trial in range(trials):
        _diag_bound(t, rng, trial, tol)
    _diag_witnesses(t, tol)
    return t.report("prop-7.1", DIAG_STATEMENT, seed, tol)


# --- lower bounds for n factors ----------------------------------------------


CONJECTURE_KINDS = ("vector-lower-bound", "operator-lower-bound")
PROVEN_DEGREES = (1, 2, 3)


def _vector_draw(rng, d, n, trial):
    kind = trial % 3
    if kind == 0:
        return [cnormal(rng, d) for _ in range(n)]
    if kind == 1:
        # nearly orthogonal: columns of a unitary with a small perturbation
        u = unitary(rng, d)
        return [u[:, i % d] + 0.05 * cnormal(rng, d) for i in range(n)]
    base = cnormal(rng, d)
    return [base + 0.3 * cnormal(rng, d) for _ in range(n)]


def vector_ratio(vs):
    return float(np.linalg.norm(sym_tensor_of_vectors(vs)) / np.prod([np.linalg.norm(v) for v in vs]))


def operator_ratio(mats, rng):
    sup, _ = sup_product_estimate(mats, rng, samples=32, steps=30)
    if sup == 0.0:
        return math.inf
    return norm(sym_product(mats)) / sup


def conjecture_sampler(kind, n, d=None, trials=1000, seed=0, tol=1e-10):
    """Smallest observed ratio against the 1/sqrt(n!) lower bound.

    For n <= 3 the bound is proven and asserted.  For n >= 4 the question is
    open: the ratio is recorded and any value below 1/sqrt(n!) is listed as a
    counterexample candidate, but nothing is asserted.
    """
    if kind not in CONJECTURE_KINDS:
        raise ValueError(f"unknown conjecture {kind!r}; expected one of {CONJECTURE_KINDS}")
    if not 1 <= n <= 5:
        raise ValueError("n must be between 1 and 5")
    if d is None:
        d = max(n, 2) if kind == "vector-lower-bound" else 3
    rng = rng_for(seed)
    t = Tally()
    bound = 1.0 / math.sqrt(math.factorial(n))
    asserted = n in PROVEN_DEGREES
    ratios = []
    candidates = []
    for trial in range(trials):
        if kind == "vector-lower-bound":
            ratio = vector_ratio(_vector_draw(rng, d, n, trial))
        else:
            ratio = operator_ratio([cnormal(rng, (d, d)) for _ in range(n)], rng)
        ratios.append(ratio)
        if asserted:
            t.upper(bound, ratio, tol, "ratio >= 1/sqrt(n!)", trial=trial)
            if kind == "vector-lower-bound":
                t.upper(ratio, 1.0, tol, "ratio <= 1", trial=trial)
        elif ratio < bound - tol and len(candidates) < 20:
            candidates.append({"trial": trial, "ratio": ratio})
    special = {}
    if kind == "vector-lower-bound":
        if d >= n:
            special["orthonormal"] = vector_ratio(list(np.eye(d, dtype=np.complex128)[:n]))
        e = unit_vector(rng, d)
        special["equal"] = vector_ratio([e] * n)
        if asserted:
            if "orthonormal" in special:
                t.equal(special["orthonormal"] - bound, tol, "orthonormal tuple attains 1/sqrt(n!)")
            t.equal(special["equal"] - 1.0, tol, "equal vectors attain 1")
    t.observe(
        kind=kind,
        n=n,
        d=d,
        bound=bound,
        asserted=asserted,
        min_ratio=min(ratios) if ratios else None,
        max_ratio=max(ratios) if ratios else None,
        special_ratios=special,
        counterexample_candidates=candidates,
    )
    statement = f"{kind}: ratio >= 1/sqrt({n}!) " + ("(proven, asserted)" if asserted else "(open, recorded only)")
    return t.report(f"explore:{kind}", statement, seed, tol)
