"""Verification suites, sharp-constant witnesses and the lower-bound sampler."""

from .checks import (
    CONJECTURE_KINDS,
    conjecture_sampler,
    verify_diag_norm_bound,
    verify_nonzero_product,
    verify_norm_lower_2,
    verify_orthogonal_ranges,
)
from .report import Tally, VerifyReport
from .shifts import (
    BackshiftEigenvector,
    KernelCoefficients,
    backshift_eigenvector,
    check_kernel_vector,
    degree_block,
    kernel_vector_SM,
    shift_block_spectra,
    verify_point_spectrum_SM,
)
from .suites import REGISTRY, Suite, get_suite, run_suite, suite_ids

__all__ = [
    "BackshiftEigenvector",
    "CONJECTURE_KINDS",
    "KernelCoefficients",
    "REGISTRY",
    "Suite",
    "Tally",
    "VerifyReport",
    "backshift_eigenvector",
    "check_kernel_vector",
    "conjecture_sampler",
    "degree_block",
    "get_suite",
    "kernel_vector_SM",
    "run_suite",
    "shift_block_spectra",
    "suite_ids",
    "verify_diag_norm_bound",
    "verify_nonzero_product",
    "verify_norm_lower_2",
    "verify_orthogonal_ranges",
    "verify_point_spectrum_SM",
]
