"""The Euclidean plane without the origin.

With the induced metric it is a length space: two points on opposite sides of
the origin are joined by detours through points close to it, whose lengths
approach the distance. It is not complete, and such pairs have no midpoint.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from metricat.curve import Curve, Polyline
from metricat.spaces.base import BaseSpace, metaspace

PUNCTURE_RADIUS = 1e-12
DETOUR_OFFSETS = (0.5, 0.1, 0.01, 1e-3, 1e-4)


def _segment_interpolator(p, q, s):
    return (1 - s) * p + s * q


@metaspace(kind="punctured_plane", sampler=True, complete=False)
class PuncturedPlane(BaseSpace):
    """Punctured plane E² minus the origin, with the induced Euclidean metric.

    Examples
    --------
    >>> PuncturedPlane().distance([-1, 0], [1, 0])
    2.0
    """

    def distance(self, p, q) -> float:
        return float(np.linalg.norm(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)))

    def contains(self, point) -> bool:
        arr = np.asarray(point, dtype=float)
        return (arr.shape == (2,) and bool(np.all(np.isfinite(arr)))
                and float(np.linalg.norm(arr)) > PUNCTURE_RADIUS)

    def sample(self, seed: int) -> Iterator[np.ndarray]:
        rng = np.random.default_rng(seed)
        while True:
            point = rng.normal(size=2)
            if np.linalg.norm(point) > PUNCTURE_RADIUS:
                yield point

    @staticmethod
    def _misses_origin(start: np.ndarray, end: np.ndarray) -> bool:
        direction = end - start
        length_sq = float(direction @ direction)
        if length_sq == 0:
            return bool(np.linalg.norm(start) > PUNCTURE_RADIUS)
        fraction = min(1.0, max(0.0, -float(start @ direction) / length_sq))
        return bool(np.linalg.norm(start + fraction * direction) > PUNCTURE_RADIUS)

    def candidate_curves(self, p, q) -> list[Curve]:
        """Segment from p to q, or detours around the origin if the segment meets it."""
        start, end = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
        if self._misses_origin(start, end):
            return [Polyline([0.0, 1.0], [start, end], _segment_interpolator)]
        direction = end - start
        normal = np.array([-direction[1], direction[0]])
        norm = np.linalg.norm(normal)
        normal = normal / norm if norm > 0 else np.array([0.0, 1.0])
        curves = []
        for offset in DETOUR_OFFSETS:
            corner = offset * normal
            first = float(np.linalg.norm(corner - start))
            second = float(np.linalg.norm(end - corner))
            split = first / (first + second)
            curves.append(Polyline([0.0, split, 1.0], [start, corner, end],
                                   _segment_interpolator))
        return curves

    def _param_dict(self):
        return {}

    @classmethod
    def _param_schema(cls):
        return {}

    @classmethod
    def default_space(cls):
        return cls()
