"""Curves in a metric space and partitions of their parameter interval.

A :class:`Curve` is a map from a closed interval into a space. It knows nothing
about the metric; the length and geodesic operations take the space handle as an
explicit argument. :class:`Polyline` is a curve given by samples at increasing
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

import numpy as np

from metricat.errors import DomainError

PARAM_TOL = 1e-12
"""Slack allowed when checking that a parameter lies in a domain."""

Point = Any


class Curve():
    """Continuous map from an interval into a space.

    Parameters
    ----------
    func:
        Map from a parameter to a point.
    domain:
        Closed parameter interval ``(start, end)`` with ``start <= end``.
    """

    def __init__(self, func: Callable[[float], Point], domain: tuple[float, float] = (0.0, 1.0)):
        start, end = float(domain[0]), float(domain[1])
        if not (np.isfinite(start) and np.isfinite(end)) or start > end:
            raise DomainError(f"Curve domain should be a finite interval, got ({start}, {end}).")
        self._func = func
        self.domain = (start, end)

    @property
    def start(self) -> float:
        """First parameter of the domain."""
        return self.domain[0]

    @property
    def end(self) -> float:
        """Last parameter of the domain."""
        return self.domain[1]

    @property
    def span(self) -> float:
        """Length of the parameter interval."""
        return self.domain[1] - self.domain[0]

    @property
    def endpoints(self) -> tuple[Point, Point]:
        """Points at the start and at the end of the domain."""
        return self(self.start), self(self.end)

    def __call__(self, t: float) -> Point:
        """Evaluate the curve at parameter t."""
        t = float(t)
        if t < self.start - PARAM_TOL or t > self.end + PARAM_TOL:
            raise DomainError(f"Parameter {t} lies outside the curve domain {self.domain}.")
        return self._func(min(max(t, self.start), self.end))

    def sample(self, n_points: int) -> tuple[np.ndarray, list]:
        """Evaluate the curve on n_points equally spaced parameters."""
        params = np.linspace(self.start, self.end, n_points)
        return params, [self(t) for t in params]

    def reverse(self) -> Curve:
        """Same image traversed backwards: t ↦ σ(a + b - t)."""
        start, end = self.domain
        return Curve(lambda t: self._func(start + end - t), self.domain)

    def restrict(self, start: float, end: float) -> Curve:
        """Restriction to the sub-interval [start, end]."""
        if start < self.start - PARAM_TOL or end > self.end + PARAM_TOL or start > end:
            raise DomainError(f"Interval ({start}, {end}) is not contained in {self.domain}.")
        return Curve(self._func, (max(start, self.start), min(end, self.end)))

    def reparametrize(self, domain: tuple[float, float]) -> Curve:
        """Affine reparametrization onto a new domain.

        Parameters
        ----------
        domain:
            New parameter interval. If the current domain is a single point, the
            new curve is constant.

        Returns
        -------
            Curve with the same image, traversed in the same direction.
        """
        new_start, new_end = float(domain[0]), float(domain[1])
        start, end = self.domain
        if new_end == new_start or end == start:
            point = self._func(start)
            return Curve(lambda t: point, (new_start, new_end))
        scale = (end - start) / (new_end - new_start)
        return Curve(lambda t: self._func(start + (t - new_start) * scale), (new_start, new_end))

    def concatenate(self, other: Curve) -> Curve:
        """Traverse this curve, then other.

        The domains must be adjacent: ``self.end == other.start``, and the
        curves must meet, which is the caller's responsibility.
        """
        if abs(self.end - other.start) > PARAM_TOL:
            raise DomainError(f"Cannot concatenate curves on non-adjacent domains {self.domain}"
                              f" and {other.domain}.")
        joint = self.end

        def _func(t: float) -> Point:
            return self(t) if t <= joint else other(t)
        return Curve(_func, (self.start, other.end))

    @classmethod
    def constant(cls, point: Point, domain: tuple[float, float] = (0.0, 1.0)) -> Curve:
        """Constant curve at point."""
        return cls(lambda t: point, domain)


class Polyline(Curve):
    """Curve given by samples at strictly increasing parameters.

    Between two samples the curve follows the geodesic between them when an
    interpolator is given (built from a geodesic oracle). Without an
    interpolator the curve takes the value of the sample with the nearest
    parameter, ties going to the lower one.

    Parameters
    ----------
    params:
        Strictly increasing parameters.
    points:
        Points at those parameters.
    interpolator:
        Optional map ``(p, q, s) -> point`` for s in [0, 1].
    """

    def __init__(self, params: Sequence[float], points: Sequence[Point],
                 interpolator: Optional[Callable[[Point, Point, float], Point]] = None):
        self.params = np.asarray(params, dtype=float)
        self.points = list(points)
        if len(self.params) != len(self.points) or len(self.points) == 0:
            raise DomainError("A polyline needs as many parameters as points, at least one.")
        if len(self.params) > 1 and np.any(np.diff(self.params) <= 0):
            raise DomainError("Polyline parameters should be strictly increasing.")
        self.interpolator = interpolator
        super().__init__(self._evaluate, (self.params[0], self.params[-1]))

    @classmethod
    def from_points(cls, points: Sequence[Point], domain: tuple[float, float] = (0.0, 1.0),
                    interpolator: Optional[Callable[[Point, Point, float], Point]] = None,
                    ) -> Polyline:
        """Create a polyline with equally spaced parameters on a domain."""
        if len(points) == 1:
            return cls([domain[0]], points, interpolator)
        return cls(np.linspace(domain[0], domain[1], len(points)), points, interpolator)

    def _evaluate(self, t: float) -> Point:
        idx = int(np.searchsorted(self.params, t, side="left"))
        if idx < len(self.params) and self.params[idx] == t:
            return self.points[idx]
        if idx == 0:
            return self.points[0]
        if idx >= len(self.params):
            return self.points[-1]
        low, high = self.params[idx - 1], self.params[idx]
        if self.interpolator is not None:
            return self.interpolator(self.points[idx - 1], self.points[idx],
                                     (t - low) / (high - low))
        if t - low <= high - t:
            return self.points[idx - 1]
        return self.points[idx]


@dataclass(frozen=True)
class Partition():
    """Strictly increasing knots spanning a parameter interval.

    Parameters
    ----------
    knots:
        Strictly increasing sequence of parameters.
    """

    knots: tuple[float, ...]

    def __post_init__(self):
        knots = tuple(float(k) for k in self.knots)
        if len(knots) == 0:
            raise DomainError("A partition needs at least one knot.")
        if any(k1 >= k2 for k1, k2 in zip(knots[:-1], knots[1:])):
            raise DomainError(f"Partition knots should be strictly increasing, got {knots}.")
        object.__setattr__(self, "knots", knots)

    @classmethod
    def uniform(cls, domain: tuple[float, float], n_intervals: int) -> Partition:
        """Partition of the domain into n_intervals equal intervals."""
        if domain[0] == domain[1]:
            return cls((domain[0],))
        return cls(tuple(np.linspace(domain[0], domain[1], n_intervals + 1)))

    @classmethod
    def dyadic(cls, domain: tuple[float, float], depth: int) -> Partition:
        """Partition into 2**depth equal intervals."""
        return cls.uniform(domain, 2**depth)

    def refine(self) -> Partition:
        """Insert the midpoint of every interval."""
        knots = np.asarray(self.knots)
        if len(knots) == 1:
            return self
        mids = (knots[:-1] + knots[1:]) / 2
        merged = np.empty(2 * len(knots) - 1)
        merged[0::2] = knots
        merged[1::2] = mids
        return Partition(tuple(merged))

    def spans(self, domain: tuple[float, float], tol: float = PARAM_TOL) -> bool:
        """Whether the first and last knots are the ends of the domain."""
        return abs(self.knots[0] - domain[0]) <= tol and abs(self.knots[-1] - domain[1]) <= tol

    def __len__(self) -> int:
        return len(self.knots)
