"""The circle with its arc length metric or its chordal metric."""

from __future__ import annotations

import math
from numbers import Real
from typing import Iterator

import numpy as np

from metricat.curve import Curve
from metricat.spaces.base import BaseSpace, metaspace

CIRCLE_METRICS = ("arc", "chord")


@metaspace(kind="circle")
class CircleSpace(BaseSpace):
    """Circle of a given circumference.

    Points are arc length positions, read modulo the circumference. With the
    arc metric the circle is a geodesic space; between antipodal points the
    counterclockwise arc is chosen. With the chord metric the circle has
    neither midpoints nor geodesics, and the short arc serves as candidate
    curve for the length metric.

    Parameters
    ----------
    metric:
        ``"arc"`` or ``"chord"``.
    circumference:
        Circumference C, the radius is C / 2π.

    Examples
    --------
    >>> CircleSpace("arc").distance(0, math.pi)
    3.141592653589793
    """

    def __init__(self, metric: str = "arc", circumference: float = 2 * math.pi):
        if metric not in CIRCLE_METRICS:
            raise ValueError(f"Unknown circle metric '{metric}', use one of {CIRCLE_METRICS}.")
        if circumference <= 0:
            raise ValueError(f"Circumference should be positive, got {circumference}.")
        self.metric = metric
        self.circumference = float(circumference)
        self.radius = self.circumference / (2 * math.pi)
        self.has_midpoints = self.has_geodesics = metric == "arc"

    def _delta(self, p, q) -> float:
        """Counterclockwise offset from p to q in [0, C)."""
        return (float(q) - float(p)) % self.circumference

    def _signed_offset(self, p, q) -> float:
        """Offset along the short arc, counterclockwise for antipodal points."""
        delta = self._delta(p, q)
        if delta <= self.circumference / 2:
            return delta
        return delta - self.circumference

    def distance(self, p, q) -> float:
        delta = self._delta(p, q)
        gap = min(delta, self.circumference - delta)
        if self.metric == "arc":
            return gap
        return 2 * self.radius * math.sin(gap / (2 * self.radius))

    def _short_arc(self, p, q) -> Curve:
        start, offset = float(p), self._signed_offset(p, q)
        return Curve(lambda t: (start + t * offset) % self.circumference)

    def midpoint(self, p, q, epsilon=0.0):
        return (float(p) + self._signed_offset(p, q) / 2) % self.circumference

    def geodesic(self, p, q) -> Curve:
        return self._short_arc(p, q)

    def candidate_curves(self, p, q):
        return [self._short_arc(p, q)]

    def sample(self, seed: int) -> Iterator[float]:
        rng = np.random.default_rng(seed)
        while True:
            yield float(rng.uniform(0, self.circumference))

    def contains(self, point) -> bool:
        return isinstance(point, Real) and math.isfinite(point)

    def encode_point(self, point):
        return float(point)

    @property
    def diameter(self):
        return self.distance(0.0, self.circumference / 2)

    def _param_dict(self):
        return {"metric": self.metric, "circumference": self.circumference}

    @classmethod
    def _param_schema(cls):
        return {
            "metric": {"enum": list(CIRCLE_METRICS)},
            "circumference": {"type": "number", "exclusiveMinimum": 0},
        }

    @classmethod
    def default_space(cls):
        return cls("arc")
