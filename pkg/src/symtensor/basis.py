"""Orthonormal bases of symmetric and antisymmetric tensor powers of C^d.

Everything is 0-based and ordered lexicographically on sorted index tuples,
so the matrices produced here (and everything built on them) are
reproducible bit-for-bit.  The full tensor power C^d (x) ... (x) C^d is
flattened row-major: the tuple (i_1, ..., i_n) sits at position
sum_k i_k * d**(n-k), which is the order ``numpy.kron`` uses.
"""

import itertools
import math
import sys
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import SizeGuardError, check_power_size


def as_complex_matrix(a, square=True):
    """Coerce ``a`` to a 2-D complex128 array with finite entries."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


@dataclass(frozen=True)
class MultiIndex:
    """Sorted tuple of basis labels naming one symmetric/antisymmetric basis vector."""

    entries: tuple

    @property
    def degree(self):
        return len(self.entries)

    @property
    def multiplicities(self):
        """Counts m_l of each distinct label, in increasing label order."""
        counts = Counter(self.entries)
        return tuple(counts[k] for k in sorted(counts))

    def is_nondecreasing(self):
        return all(a <= b for a, b in zip(self.entries, self.entries[1:]))

    def is_increasing(self):
        return all(a < b for a, b in zip(self.entries, self.entries[1:]))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _overflow_guard(count):
    if count > sys.maxsize:
        raise OverflowError(f"basis size {count} overflows the platform integer")


def sym_dim(d, n):
    return math.comb(d + n - 1, n)


def asym_dim(d, n):
    """Dimension of the antisymmetric power; the degree-one power is defined to be {0}."""
    return math.comb(d, n) if 2 <= n <= d else 0


def _check_dn(d, n):
    if d < 1 or n < 1:
        raise ValueError(f"need d >= 1 and n >= 1, got d={d}, n={n}")


def enumerate_sym_indices(d, n):
    """All non-decreasing n-tuples over range(d), lexicographically."""
    _check_dn(d, n)
    _overflow_guard(sym_dim(d, n))
    return [MultiIndex(t) for t in itertools.combinations_with_replacement(range(d), n)]


def enumerate_asym_indices(d, n):
    """All strictly increasing n-tuples over range(d); empty when n > d or n == 1."""
    _check_dn(d, n)
    _overflow_guard(asym_dim(d, n))
    if n == 1:
        return []
    return [MultiIndex(t) for t in itertools.combinations(range(d), n)]


def multiindex_norm(idx, n=None):
    """Norm of e_{i_1} . ... . e_{i_n} (symmetrized, unnormalized): sqrt(prod m_l! / n!)."""
    entries = tuple(idx)
    if n is None:
        n = len(entries)
    if len(entries) != n:
        raise ValueError(f"multi-index {entries} does not have degree {n}")
    prod = 1
    for m in MultiIndex(entries).multiplicities:
        prod *= math.factorial(m)
    return math.sqrt(prod / math.factorial(n))


def permutation_sign(perm):
    """Sign of a permutation given as a tuple of images of 0..n-1."""
    perm = list(perm)
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _check_perm(perm):
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
    return perm


def compose(pi, tau):
    """Product pi*tau for which ``permutation_matrix`` is multiplicative.

    The action pi_hat(u_0 (x) ... ) = u_{pi(0)} (x) ... is a homomorphism when
    permutations multiply left-to-right: (pi*tau)(k) = tau(pi(k)).
    """
    pi, tau = _check_perm(pi), _check_perm(tau)
    if len(pi) != len(tau):
        raise ValueError("permutations of different degrees")
    return tuple(tau[pi[k]] for k in range(len(pi)))


def inverse(pi):
    pi = _check_perm(pi)
    inv = [0] * len(pi)
    for k, p in enumerate(pi):
        inv[p] = k
    return tuple(inv)


@lru_cache(maxsize=64)
def _digits(d, n):
    """Array (n, d**n): digit k of every flat position."""
    grids = np.indices((d,) * n).reshape(n, -1)
    grids.setflags(write=False)
    return grids


def flat_index(entries, d):
    pos = 0
    for i in entries:
        pos = pos * d + int(i)
    return pos


def permutation_matrix(perm, d):
    """Unitary 0/1 matrix of pi_hat on the product basis of (C^d)^{(x) n}."""
    perm = _check_perm(perm)
    n = len(perm)
    total = check_power_size(d, n)
    digits = _digits(d, n)
    permuted = digits[list(perm)]
    rows = np.ravel_multi_index(tuple(permuted), (d,) * n)
    mat = np.zeros((total, total), dtype=np.complex128)
    mat[rows, np.arange(total)] = 1.0
    return mat


def _averaged_permutations(d, n, signed):
    total = check_power_size(d, n)
    if total * total > 16 * 10**7:
        raise SizeGuardError(f"dense {total}x{total} projector is too large to materialize")
    digits = _digits(d, n)
    out = np.zeros((total, total), dtype=np.complex128)
    cols = np.arange(total)
    for perm in itertools.permutations(range(n)):
        rows = np.ravel_multi_index(tuple(digits[list(perm)]), (d,) * n)
        weight = permutation_sign(perm) if signed else 1
        out[rows, cols] += weight
    return out / math.factorial(n)


def symmetrizer(d, n):
    """S_n = (1/n!) sum over permutations of pi_hat."""
    return _averaged_permutations(d, n, signed=False)


def antisymmetrizer(d, n):
    """A_n = (1/n!) sum over permutations of sgn(pi) pi_hat."""
    return _averaged_permutations(d, n, signed=True)


class _PowerBasis:
    """Orthonormal basis of a symmetric or antisymmetric tensor power.

    Column c of ``embed()`` is the normalized vector e_{i_1} . ... . e_{i_n}
    for ``indices[c]``; the sparse triple (rows, cols, vals) stores the same
    thing without materializing the dense isometry.
    """

    flavor = None

    def __init__(self, d, n):
        _check_dn(d, n)
        self.d = d
        self.n = n
        self.indices = self._enumerate(d, n)
        self.position = {idx.entries: c for c, idx in enumerate(self.indices)}
        self.norms = np.array([self._norm(idx) for idx in self.indices])
        self.full_dim = d**n
        self._build_scatter()

    def __len__(self):
        return len(self.indices)

    @property
    def dim(self):
        return len(self.indices)

    def _build_scatter(self):
        rows, cols, vals = [], [], []
        for c, idx in enumerate(self.indices):
            for pos, coeff in self._column_terms(idx.entries):
                rows.append(pos)
                cols.append(c)
                vals.append(coeff)
        self.rows = np.array(rows, dtype=np.int64)
        self.cols = np.array(cols, dtype=np.int64)
        self.vals = np.array(vals, dtype=np.float64)

    def embed(self):
        """Dense isometry Q: coordinates in this basis -> (C^d)^{(x) n}."""
        check_power_size(self.d, self.n)
        q = np.zeros((self.full_dim, self.dim), dtype=np.complex128)
        q[self.rows, self.cols] = self.vals
        return q

    def embed_vector(self, coords):
        coords = np.asarray(coords, dtype=np.complex128)
        x = np.zeros(self.full_dim, dtype=np.complex128)
        np.add.at(x, self.rows, self.vals * coords[self.cols])
        return x

    def project_vector(self, x):
        """Q^* x: coordinates of the projection of x onto this subspace."""
        x = np.asarray(x, dtype=np.complex128)
        out = np.zeros(self.dim, dtype=np.complex128)
        np.add.at(out, self.cols, self.vals * x[self.rows])
        return out


class SymBasis(_PowerBasis):
    flavor = "sym"

    @staticmethod
    def _enumerate(d, n):
        return enumerate_sym_indices(d, n)

    def _norm(self, idx):
        return multiindex_norm(idx.entries, self.n)

    def _column_terms(self, entries):
        arrangements = set(itertools.permutations(entries))
        coeff = 1.0 / math.sqrt(len(arrangements))
        d = self.d
        return [(flat_index(a, d), coeff) for a in sorted(arrangements)]


class AsymBasis(_PowerBasis):
    flavor = "asym"

    @staticmethod
    def _enumerate(d, n):
        return enumerate_asym_indices(d, n)

    def _norm(self, idx):
        return math.sqrt(1.0 / math.factorial(self.n))

    def _column_terms(self, entries):
        coeff = 1.0 / math.sqrt(math.factorial(len(entries)))
        d = self.d
        terms = []
        for perm in itertools.permutations(range(len(entries))):
            arranged = tuple(entries[p] for p in perm)
            terms.append((flat_index(arranged, d), permutation_sign(perm) * coeff))
        return sorted(terms)


@lru_cache(maxsize=32)
def sym_basis(d, n):
    check_power_size(d, n)
    return SymBasis(d, n)


@lru_cache(maxsize=32)
def asym_basis(d, n):
    check_power_size(d, n)
    return AsymBasis(d, n)


def basis_for(flavor, d, n):
    if flavor in ("sym", "symmetric"):
        return sym_basis(d, n)
    if flavor in ("asym", "antisymmetric"):
        return asym_basis(d, n)
    raise ValueError(f"unknown flavor {flavor!r}")


def embed_sym(d, n):
    """Isometry onto the symmetric power; columns follow ``enumerate_sym_indices``."""
    return sym_basis(d, n).embed()


def embed_asym(d, n):
    """Isometry onto the antisymmetric power; columns follow ``enumerate_asym_indices``."""
    return asym_basis(d, n).embed()


def _simple_tensor(vs):
    vs = [np.asarray(v, dtype=np.complex128).ravel() for v in vs]
    if not vs:
        raise ValueError("need at least one vector")
    d = vs[0].size
    if any(v.size != d for v in vs):
        raise ValueError("all vectors must have the same length")
    check_power_size(d, len(vs))
    x = vs[0]
    for v in vs[1:]:
        x = np.kron(x, v)
    return x, d, len(vs)


def sym_tensor_of_vectors(vs):
    """Coordinates of v_1 . v_2 . ... . v_n in the symmetric ONB."""
    x, d, n = _simple_tensor(vs)
    return sym_basis(d, n).project_vector(x)


def wedge_of_vectors(vs):
    """Coordinates of v_1 ^ v_2 ^ ... ^ v_n in the antisymmetric ONB."""
    x, d, n = _simple_tensor(vs)
    if asym_dim(d, n) == 0:
        return np.zeros(0, dtype=np.complex128)
    return asym_basis(d, n).project_vector(x)
