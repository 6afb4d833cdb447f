"""Exceptions raised by metricat.

Every error derives from :class:`MetricatError`. Errors that correspond to a
bad argument additionally derive from the matching builtin exception, so that
``except ValueError`` keeps working for callers that do not know about the
metricat hierarchy.
"""

from __future__ import annotations

from typing import Any, Optional


class MetricatError(Exception):
    """Base class for all metricat errors."""


class DomainError(MetricatError, ValueError):
    """Argument outside the domain of an operation (foreign point, bad partition, ...)."""


class EvaluationError(MetricatError, ArithmeticError):
    """A distance oracle returned a non-finite or negative value."""


class UnsupportedCapabilityError(MetricatError, NotImplementedError):
    """The space handle does not expose the oracle that an operation needs."""


class NotEmbeddableError(MetricatError, ValueError):
    """Three lengths violate the triangle inequality, no planar triangle exists."""


class UndefinedAngleError(MetricatError, ValueError):
    """An angle was requested at a vertex that coincides with one of its endpoints."""


class DegenerateCurveError(MetricatError, ValueError):
    """A zero-length curve cannot be stretched onto a nondegenerate interval."""


class MidpointNotFoundError(MetricatError, LookupError):
    """No ε-midpoint was found within the search budget.

    Parameters
    ----------
    message:
        Human readable description.
    pair:
        The two points for which the search failed.
    best:
        Best candidate found and the ε it achieves, if any candidate was tried.
    """

    def __init__(self, message: str, pair: Optional[tuple] = None,
                 best: Optional[tuple[Any, float]] = None):
        super().__init__(message)
        self.pair = pair
        self.best = best


class NoConvergenceError(MetricatError, ArithmeticError):
    """An iterative procedure did not stabilise within its schedule or budget."""


class IncompleteSpaceError(MetricatError):
    """A Cauchy sequence of approximate midpoints converges to a point outside the space.

    Parameters
    ----------
    message:
        Human readable description.
    candidate:
        The last point of the sequence.
    epsilon:
        The midpoint defect that this last point still has.
    """

    def __init__(self, message: str, candidate: Any = None, epsilon: float = float("nan")):
        super().__init__(message)
        self.candidate = candidate
        self.epsilon = epsilon


class CertificateError(MetricatError):
    """A construction failed the check it has to pass before it is returned."""


class SpaceValidationError(MetricatError, ValueError):
    """A space specification violates a metric axiom or a structural invariant.

    Parameters
    ----------
    message:
        Human readable description.
    axiom:
        Name of the violated axiom, e.g. ``"triangle inequality"``.
    witness:
        Labels of the points that witness the violation.
    """

    def __init__(self, message: str, axiom: Optional[str] = None,
                 witness: Optional[tuple] = None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class SpaceParseError(MetricatError, ValueError):
    """An input file could not be parsed.

    Parameters
    ----------
    message:
        Human readable description.
    line:
        One-based line number of the offending token.
    column:
        One-based column number of the offending token.
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = "" if line is None else f" (line {line}, column {column})"
        super().__init__(message + location)
        self.line = line
        self.column = column


class ReportIOError(MetricatError, OSError):
    """Writing a report failed."""

    def __init__(self, message: str, path: Any = None):
        super().__init__(message)
        self.path = path
