"""Exception types shared across the package."""

from __future__ import annotations


class ValidationError(ValueError):
    """Input data violates a structural constraint."""


class NotRealizable(ArithmeticError):
    """An index computation produced a non-integral dimension."""


class PreconditionFailed(ValueError):
    """An operation was called outside its domain (e.g. k = 0 for existence)."""


class ResourceLimitExceeded(RuntimeError):
    """An enumeration would exceed its configured caps."""


class InvalidAlpha(ValidationError):
    """A 2x3 matrix does not have the rank required by the CP^2 model."""


class DegeneratePair(ValidationError):
    """The two points of an unordered pair coincide projectively."""
