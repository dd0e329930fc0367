"""Symmetric and antisymmetric tensor products of operators in explicit coordinates."""

from ._version import __version__
from .basis import (
    AsymBasis,
    MultiIndex,
    SymBasis,
    antisymmetrizer,
    asym_basis,
    asym_dim,
    basis_for,
    compose,
    embed_asym,
    embed_sym,
    enumerate_asym_indices,
    enumerate_sym_indices,
    inverse,
    multiindex_norm,
    permutation_matrix,
    permutation_sign,
    sym_basis,
    sym_dim,
    sym_tensor_of_vectors,
    symmetrizer,
    wedge_of_vectors,
)
from .errors import EigenConvergenceError, InputFormatError, SizeGuardError
from .operators import Conjugation, OperatorSpec, conjugate_operator, is_c_symmetric, kron, materialize
from .products import (
    FLAVORS,
    ProductRequest,
    apply_sym_product,
    asym_product,
    averaged_tensor,
    block_decompose,
    closed_form_2x2,
    sym_power,
    sym_product,
)
from .spectral import (
    NormReport,
    SpectrumReport,
    build_Ak,
    build_Bk,
    build_Ck,
    diag_sym_spectrum,
    gelfand_estimate,
    general_eigen,
    hermitian_eigen,
    multi_diag_sym_spectrum,
    multisets_match,
    operator_norm,
    spec_Ak,
    spec_Bk,
    spec_Ck,
    spectral_radius,
)

__all__ = [
    "__version__",
    "antisymmetrizer",
    "apply_sym_product",
    "asym_basis",
    "asym_dim",
    "asym_product",
    "AsymBasis",
    "averaged_tensor",
    "basis_for",
    "block_decompose",
    "build_Ak",
    "build_Bk",
    "build_Ck",
    "closed_form_2x2",
    "compose",
    "conjugate_operator",
    "Conjugation",
    "diag_sym_spectrum",
    "EigenConvergenceError",
    "embed_asym",
    "embed_sym",
    "enumerate_asym_indices",
    "enumerate_sym_indices",
    "FLAVORS",
    "gelfand_estimate",
    "general_eigen",
    "hermitian_eigen",
    "InputFormatError",
    "inverse",
    "is_c_symmetric",
    "kron",
    "materialize",
    "multi_diag_sym_spectrum",
    "MultiIndex",
    "multiindex_norm",
    "multisets_match",
    "NormReport",
    "operator_norm",
    "OperatorSpec",
    "permutation_matrix",
    "permutation_sign",
    "ProductRequest",
    "SizeGuardError",
    "spec_Ak",
    "spec_Bk",
    "spec_Ck",
    "spectral_radius",
    "SpectrumReport",
    "sym_basis",
    "sym_dim",
    "sym_power",
    "sym_product",
    "sym_tensor_of_vectors",
    "SymBasis",
    "symmetrizer",
    "wedge_of_vectors",
]
