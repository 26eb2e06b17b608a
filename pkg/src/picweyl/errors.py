"""Shared exception types.

DomainError marks geometric domain violations (the CLI maps it to exit
code 2).  CurveError and its children mark cubics the curve machinery
refuses to handle; refusing loudly beats guessing.
"""


class DomainError(ValueError):
    """Input leaves the geometric domain of the operation."""


class CurveError(ValueError):
    """Base for cubic-curve structure problems."""


class ReducibleCurveError(CurveError):
    """The cubic is reducible or non-reduced."""


class UnsupportedCurveError(CurveError):
    """Genuine curve, but outside the supported scope (non-split node,
    singularity only over an extension field, small-characteristic
    normalization limits)."""


class BudgetError(RuntimeError):
    """A capped computation ran out of budget before reaching an answer."""
