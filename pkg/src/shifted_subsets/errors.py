"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class CapacityError(ValueError):
    """A brute-force computation would exceed the supported size."""


class InconclusiveError(RuntimeError):
    """A recovery procedure exhausted its budget without a decisive sample."""
