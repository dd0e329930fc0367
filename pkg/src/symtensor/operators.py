"""Operator descriptions, finite compressions, Kronecker products, conjugations.

Operators on l^2 are realized by the corner compression P_N T P_N on
span{e_0, ..., e_{N-1}}.  That keeps Shift^T == BackShift exactly and
keeps the degree grading the shift computations rely on.
"""

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .basis import as_complex_matrix
from .errors import check_power_size

KINDS = ("dense", "diagonal", "shift", "backshift", "weighted_shift")


@dataclass(frozen=True)
class OperatorSpec:
    """Symbolic operator: ``kind`` plus the data that kind needs.

    dense -> ``matrix``; diagonal -> ``values`` (mu_0, mu_1, ...);
    weighted_shift -> ``values`` (alpha_0, alpha_1, ...); shift and
    backshift need no data.
    """

    kind: str
    values: tuple = ()
    matrix: np.ndarray = field(default=None, compare=False)
    label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "dense":
            if self.matrix is None:
                raise ValueError("dense operator needs a matrix")
            object.__setattr__(self, "matrix", as_complex_matrix(self.matrix))
        vals = tuple(complex(v) for v in self.values)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("operator sequence has non-finite values")
        object.__setattr__(self, "values", vals)

    @classmethod
    def dense(cls, matrix, label=""):
        return cls("dense", matrix=matrix, label=label)

    @classmethod
    def diagonal(cls, values, label=""):
        return cls("diagonal", values=tuple(values), label=label)

    @classmethod
    def shift(cls, label="S"):
        return cls("shift", label=label)

    @classmethod
    def backshift(cls, label="S*"):
        return cls("backshift", label=label)

    @classmethod
    def weighted_shift(cls, weights, label=""):
        return cls("weighted_shift", values=tuple(weights), label=label)

    @property
    def natural_size(self):
        """Dimension fixed by the data (dense only), else None."""
        if self.kind == "dense":
            return self.matrix.shape[0]
        return None


def _need(spec, count):
    if len(spec.values) < count:
        raise ValueError(
            f"{spec.kind} operator supplies {len(spec.values)} values, truncation needs {count}"
        )


def materialize(spec, N):
    """N x N compression of ``spec``."""
    if N < 1:
        raise ValueError("truncation size must be >= 1")
    if spec.kind == "dense":
        if spec.matrix.shape != (N, N):
            raise ValueError(f"dense operator is {spec.matrix.shape}, requested {N}x{N}")
        return spec.matrix.copy()
    if spec.kind == "diagonal":
        _need(spec, N)
        return np.diag(np.array(spec.values[:N], dtype=np.complex128))
    if spec.kind == "shift":
        return np.eye(N, k=-1, dtype=np.complex128)
    if spec.kind == "backshift":
        return np.eye(N, k=1, dtype=np.complex128)
    # weighted shift: e_i -> alpha_i e_{i+1}; only alpha_0..alpha_{N-2} survive compression
    _need(spec, N - 1)
    return np.diag(np.array(spec.values[: N - 1], dtype=np.complex128), k=-1)


def kron(mats):
    """Kronecker product in slot order (slot 1 most significant)."""
    mats = [as_complex_matrix(a) for a in mats]
    if not mats:
        raise ValueError("kron needs at least one matrix")
    total = 1
    for a in mats:
        total *= a.shape[0]
    # the guard is stated in terms of d**n; apply it to the product of sizes
    check_power_size(total, 1)
    return reduce(np.kron, mats)


def apply_kron(mats, x):
    """(A_1 (x) ... (x) A_n) x without forming the Kronecker product."""
    dims = [m.shape[0] for m in mats]
    t = np.asarray(x, dtype=np.complex128).reshape(dims)
    for axis, m in enumerate(mats):
        t = np.moveaxis(np.tensordot(m, t, axes=([1], [axis])), 0, axis)
    return t.reshape(-1)


@dataclass(frozen=True)
class Conjugation:
    """Componentwise complex conjugation relative to the standard basis."""

    kind: str = "componentwise"

    def __call__(self, v):
        return apply_conjugation(self, v)


def apply_conjugation(C, v):
    if C.kind != "componentwise":
        raise ValueError(f"unsupported conjugation {C.kind!r}")
    return np.conj(np.asarray(v, dtype=np.complex128))


def conjugate_operator(C, A):
    """Matrix of C A^* C.  For componentwise C this is the transpose of A."""
    A = as_complex_matrix(A)
    if C.kind != "componentwise":
        raise ValueError(f"unsupported conjugation {C.kind!r}")
    # C A^* C v = conj(A^H conj(v)) = A^T v
    return np.conj(A.conj().T)


def is_c_symmetric(T, C=Conjugation(), tol=1e-12):
    T = as_complex_matrix(T)
    scale = max(1.0, np.linalg.norm(T))
    return np.linalg.norm(T - conjugate_operator(C, T)) <= tol * scale
