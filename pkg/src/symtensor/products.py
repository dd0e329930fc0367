"""Symmetric and antisymmetric tensor products of operators as ONB matrices.

Every product is computed the same way: average the Kronecker products over
all orderings of the factors, then compress to the symmetric (or
antisymmetric) subspace with the isometry from ``basis``.  Only flat factor
lists are accepted; (A . B) . C has no meaning because A . B does not act
on the same space as C.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .basis import as_complex_matrix, basis_for
from .errors import check_degree, check_power_size
from .operators import OperatorSpec, apply_kron, materialize

FLAVORS = ("symmetric", "antisymmetric", "full-averaged")
_FLAVOR_ALIASES = {
    "sym": "symmetric",
    "symmetric": "symmetric",
    "asym": "antisymmetric",
    "antisymmetric": "antisymmetric",
    "wedge": "antisymmetric",
    "full": "full-averaged",
    "full-averaged": "full-averaged",
    "averaged": "full-averaged",
}


def normalize_flavor(flavor):
    try:
        return _FLAVOR_ALIASES[flavor]
    except KeyError:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}") from None


def _factors(As):
    mats = [as_complex_matrix(a) for a in As]
    if not mats:
        raise ValueError("need at least one factor")
    d = mats[0].shape[0]
    if any(m.shape != (d, d) for m in mats):
        raise ValueError("all factors must be square of the same size")
    n = len(mats)
    check_degree(n)
    check_power_size(d, n)
    return mats, d, n


def averaged_tensor(As):
    """(1/n!) sum over orderings pi of A_{pi(1)} (x) ... (x) A_{pi(n)}."""
    mats, d, n = _factors(As)
    total = None
    # fixed summation order keeps results bit-reproducible
    for perm in itertools.permutations(range(n)):
        term = mats[perm[0]]
        for p in perm[1:]:
            term = np.kron(term, mats[p])
        total = term if total is None else total + term
    return total / math.factorial(n)


def apply_averaged_tensor(As, x):
    """Averaged tensor applied to a full-space vector, without materializing it."""
    mats, d, n = _factors(As)
    out = np.zeros(d**n, dtype=np.complex128)
    for perm in itertools.permutations(range(n)):
        out += apply_kron([mats[p] for p in perm], x)
    return out / math.factorial(n)


def _restricted(As, flavor):
    mats, d, n = _factors(As)
    basis = basis_for(flavor, d, n)
    q = basis.embed()
    return q.conj().T @ averaged_tensor(mats) @ q


def sym_product(As):
    """Matrix of A_1 . A_2 . ... . A_n in the symmetric ONB."""
    return _restricted(As, "sym")


def asym_product(As):
    """Matrix of A_1 ^ A_2 ^ ... ^ A_n in the antisymmetric ONB."""
    return _restricted(As, "asym")


def sym_power(A, n):
    return sym_product([A] * n)


def apply_sym_product(As, coords, flavor="sym"):
    """Product applied to a coordinate vector in the sym/asym ONB."""
    mats, d, n = _factors(As)
    basis = basis_for(flavor, d, n)
    return basis.project_vector(apply_averaged_tensor(mats, basis.embed_vector(coords)))


def block_decompose(A, B):
    """Split (A (x) B + B (x) A)/2 over sym (+) asym.

    Returns (sym block, asym block, residual) where the residual is the
    largest spectral norm of the two off-diagonal couplings.
    """
    mats, d, n = _factors([A, B])
    m = averaged_tensor(mats)
    qs = basis_for("sym", d, 2).embed()
    qa = basis_for("asym", d, 2).embed()
    sym = qs.conj().T @ m @ qs
    asym = qa.conj().T @ m @ qa
    if qa.shape[1] == 0:
        return sym, asym, 0.0
    off1 = qs.conj().T @ m @ qa
    off2 = qa.conj().T @ m @ qs
    residual = max(np.linalg.norm(off1, 2), np.linalg.norm(off2, 2))
    return sym, asym, float(residual)


def closed_form_2x2(A, B):
    """3x3 matrix of A . B for 2x2 A, B written out entry by entry."""
    A = as_complex_matrix(A)
    B = as_complex_matrix(B)
    if A.shape != (2, 2) or B.shape != (2, 2):
        raise ValueError("closed form is for 2x2 factors")
    (a11, a12), (a21, a22) = A
    (b11, b12), (b21, b22) = B
    r2 = math.sqrt(2.0)
    return np.array(
        [
            [a11 * b11, (a11 * b12 + b11 * a12) / r2, a12 * b12],
            [
                (a11 * b21 + b11 * a21) / r2,
                (a11 * b22 + b11 * a22 + a12 * b21 + b12 * a21) / 2,
                (a12 * b22 + b12 * a22) / r2,
            ],
            [a21 * b21, (a21 * b22 + b21 * a22) / r2, a22 * b22],
        ],
        dtype=np.complex128,
    )


@dataclass(frozen=True)
class ProductRequest:
    """Flat list of factor specs, a flavor, and the truncation size per factor."""

    operators: tuple
    flavor: str = "symmetric"
    trunc: int = None

    def __post_init__(self):
        ops = tuple(self.operators)
        if len(ops) < 2:
            raise ValueError("a product needs at least two factors")
        for op in ops:
            if not isinstance(op, OperatorSpec):
                raise TypeError(
                    f"factors must be OperatorSpec instances, got {type(op).__name__}; "
                    "nested products are not operators on the base space"
                )
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "flavor", normalize_flavor(self.flavor))
        trunc = self.trunc
        sizes = {op.natural_size for op in ops if op.natural_size is not None}
        if len(sizes) > 1:
            raise ValueError(f"dense factors disagree in size: {sorted(sizes)}")
        if trunc is None:
            if not sizes:
                raise ValueError("truncation size required when no factor is dense")
            trunc = sizes.pop()
        elif sizes and sizes != {trunc}:
            raise ValueError(f"dense factor size {sizes.pop()} does not match trunc={trunc}")
        object.__setattr__(self, "trunc", int(trunc))
        check_degree(len(ops))
        check_power_size(self.trunc, len(ops))

    def matrices(self):
        return [materialize(op, self.trunc) for op in self.operators]

    def build(self):
        mats = self.matrices()
        if self.flavor == "symmetric":
            return sym_product(mats)
        if self.flavor == "antisymmetric":
            return asym_product(mats)
        return averaged_tensor(mats)
