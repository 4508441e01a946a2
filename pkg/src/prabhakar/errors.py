"""Exception types shared across the package."""

from __future__ import annotations


class PrabhakarError(Exception):
    """Base class for all package errors."""


class DomainError(PrabhakarError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class NonConvergent(PrabhakarError, ArithmeticError):
    """A series or quadrature failed its accuracy test."""

    def __init__(self, msg: str, *, node: int | None = None) -> None:
        if node is not None:
            msg = f"{msg} (at node {node})"
        super().__init__(msg)
        self.node = node


class UnsupportedOrder(PrabhakarError, ValueError):
    """Differentiation of an order the grid module does not provide."""


class HypothesisViolated(PrabhakarError, ValueError):
    """A checkable hypothesis of an inequality is not satisfied."""


class TailTooLarge(NonConvergent):
    """The truncated tail of an improper integral is not negligible."""


class EvaluationError(PrabhakarError, RuntimeError):
    """A user callable failed while sampling on a grid."""

    def __init__(self, msg: str, *, node: int) -> None:
        super().__init__(f"{msg} (at node {node})")
        self.node = node


class CSVFormatError(PrabhakarError, ValueError):
    """Malformed grid CSV input."""

    def __init__(self, msg: str, *, row: int | None = None) -> None:
        if row is not None:
            msg = f"row {row}: {msg}"
        super().__init__(msg)
        self.row = row
