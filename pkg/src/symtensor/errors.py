"""Exceptions and the dimension guard shared by every module."""

import os

DEFAULT_MAX_DIM = 10**6
MAX_DEGREE = 6


class SizeGuardError(ValueError):
    """Raised when a requested tensor power would exceed the dimension budget."""


class EigenConvergenceError(RuntimeError):
    """Raised when an iterative eigensolver hits its iteration cap."""


class InputFormatError(ValueError):
    """Malformed matrix or operator-spec input."""


def max_dim():
    """Current bound on the full tensor-power dimension d**n.

    ``SYMTENSOR_MAX_DIM`` in the environment overrides the default.
    """
    raw = os.environ.get("SYMTENSOR_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise SizeGuardError(f"SYMTENSOR_MAX_DIM must be an integer, got {raw!r}") from exc
    if value < 1:
        raise SizeGuardError("SYMTENSOR_MAX_DIM must be positive")
    return value


def check_degree(n):
    if n > MAX_DEGREE:
        raise SizeGuardError(f"tensor degree n={n} exceeds the limit {MAX_DEGREE}")


def check_power_size(d, n):
    """Reject d**n above the budget; returns d**n."""
    total = d**n
    limit = max_dim()
    if total > limit:
        raise SizeGuardError(f"tensor power dimension {d}**{n} = {total} exceeds {limit}")
    return total
