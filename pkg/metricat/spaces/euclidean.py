"""Euclidean space, the model space of all comparisons."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from metricat.curve import Curve
from metricat.spaces.base import BaseSpace, metaspace


@metaspace(kind="euclidean", midpoints=True, geodesics=True)
class EuclideanSpace(BaseSpace):
    """Euclidean space E^n with points as numpy arrays.

    Parameters
    ----------
    n:
        Dimension.

    Examples
    --------
    >>> EuclideanSpace(n=2).distance([0, 0], [3, 4])
    5.0
    """

    def __init__(self, n: int = 2):
        if n < 1:
            raise ValueError(f"Dimension should be at least 1, got {n}.")
        self.n = n

    def distance(self, p, q) -> float:
        return float(np.linalg.norm(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)))

    def midpoint(self, p, q, epsilon=0.0):
        return (np.asarray(p, dtype=float) + np.asarray(q, dtype=float)) / 2

    def geodesic(self, p, q) -> Curve:
        start, end = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
        return Curve(lambda t: (1 - t) * start + t * end)

    def sample(self, seed: int) -> Iterator[np.ndarray]:
        rng = np.random.default_rng(seed)
        while True:
            yield rng.normal(size=self.n)

    def contains(self, point) -> bool:
        arr = np.asarray(point, dtype=float)
        return arr.shape == (self.n,) and bool(np.all(np.isfinite(arr)))

    def _param_dict(self):
        return {"n": self.n}

    @classmethod
    def _param_schema(cls):
        return {"n": {"type": "integer", "minimum": 1}}

    @classmethod
    def default_space(cls):
        return cls(2)
