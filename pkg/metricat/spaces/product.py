"""Product of a space with the real line."""

from __future__ import annotations

import math
from numbers import Real
from typing import Iterator, Union

import numpy as np

from metricat.curve import Curve
from metricat.spaces.base import BaseSpace, metaspace
from metricat.spaces.tree import MetricTreeSpace


@metaspace(kind="product_with_line")
class ProductWithLineSpace(BaseSpace):
    """Product X × ℝ with d((x, t), (y, s)) = √(d(x, y)² + (t - s)²).

    Points are pairs ``(x, t)``. Midpoints and geodesics are taken
    componentwise and exist whenever they exist in X. The sampler draws the
    line coordinate from a standard normal distribution.

    Parameters
    ----------
    inner:
        The factor X, either a space or its specification dictionary.
    """

    def __init__(self, inner: Union[BaseSpace, dict]):
        if isinstance(inner, dict):
            # Avoid a circular import: the provider imports all spaces.
            from metricat.provider import (  # pylint: disable=import-outside-toplevel
                create_space,
            )
            inner = create_space(inner)
        self.inner = inner
        self.has_midpoints = inner.has_midpoints
        self.has_geodesics = inner.has_geodesics
        self.has_sampler = inner.has_sampler
        self.complete = inner.complete

    def distance(self, p, q) -> float:
        return math.hypot(self.inner.distance(p[0], q[0]), float(p[1]) - float(q[1]))

    def midpoint(self, p, q, epsilon=0.0):
        return (self.inner.midpoint(p[0], q[0]), (float(p[1]) + float(q[1])) / 2)

    def geodesic(self, p, q) -> Curve:
        base = self.inner.geodesic(p[0], q[0])
        start, end = float(p[1]), float(q[1])
        return Curve(lambda t: (base(base.start + t * base.span), (1 - t) * start + t * end))

    def sample(self, seed: int) -> Iterator[tuple]:
        inner_seq, line_seq = np.random.SeedSequence(seed).spawn(2)
        rng = np.random.default_rng(line_seq)
        for point in self.inner.sample(int(inner_seq.generate_state(1)[0])):
            yield (point, float(rng.normal()))

    def contains(self, point) -> bool:
        return (isinstance(point, tuple) and len(point) == 2 and isinstance(point[1], Real)
                and math.isfinite(point[1]) and self.inner.contains(point[0]))

    def encode_point(self, point):
        return {"base": self.inner.encode_point(point[0]), "t": float(point[1])}

    def _param_dict(self):
        return {"inner": self.inner.to_dict()}

    @classmethod
    def _param_schema(cls):
        return {"inner": {"type": "object", "properties": {"kind": {"type": "string"}},
                          "required": ["kind"]}}

    @classmethod
    def default_space(cls):
        return cls(MetricTreeSpace.tripod())
