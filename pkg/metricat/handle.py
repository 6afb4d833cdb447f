"""Space handles: the metric space abstraction that every check works with.

A :class:`SpaceHandle` bundles the distance oracle of a space with optional
oracles for midpoints, geodesics, sampling and candidate curves. Handles are
usually created from a space specification with
:func:`metricat.provider.make_space`, but any set of callables can be wrapped.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import islice
from typing import Any, Callable, Iterator, Optional

from metricat.curve import Curve
from metricat.errors import DomainError, EvaluationError, UnsupportedCapabilityError
from metricat.verdict import EXACT_TOL, CheckVerdict, VerdictBuilder

logger = logging.getLogger(__name__)

Point = Any


@dataclass(frozen=True)
class SpaceHandle():
    """Oracles describing a metric space.

    Parameters
    ----------
    distance:
        Metric ``(p, q) -> float``.
    midpoint_oracle:
        Optional ``(p, q, epsilon) -> point`` returning an ε-midpoint.
    geodesic_oracle:
        Optional ``(p, q) -> Curve`` returning a geodesic on [0, 1].
    sampler:
        Optional ``seed -> iterator of points``. The iterator may be infinite.
    completeness_flag:
        Whether the space is declared complete.
    diameter_hint:
        Optional upper bound on the diameter.
    contains:
        Optional membership test for points.
    candidate_oracle:
        Optional ``(p, q) -> list[Curve]`` with curves joining p to q that are
        good candidates for the induced length metric.
    point_encoder:
        Optional map from a point to a JSON compatible value.
    kind:
        Name of the space kind, used in reports.
    """

    distance: Callable[[Point, Point], float]
    midpoint_oracle: Optional[Callable[[Point, Point, float], Point]] = None
    geodesic_oracle: Optional[Callable[[Point, Point], Curve]] = None
    sampler: Optional[Callable[[int], Iterator[Point]]] = None
    completeness_flag: bool = True
    diameter_hint: Optional[float] = None
    contains: Optional[Callable[[Point], bool]] = None
    candidate_oracle: Optional[Callable[[Point, Point], list[Curve]]] = None
    point_encoder: Optional[Callable[[Point], Any]] = None
    kind: str = "custom"

    @property
    def has_midpoints(self) -> bool:
        """Whether exact midpoints are available."""
        return self.midpoint_oracle is not None

    @property
    def has_geodesics(self) -> bool:
        """Whether geodesics are available."""
        return self.geodesic_oracle is not None

    @property
    def has_sampler(self) -> bool:
        """Whether random points can be drawn."""
        return self.sampler is not None

    def measure(self, p: Point, q: Point) -> float:
        """Distance between p and q, checked to be a finite nonnegative number."""
        value = float(self.distance(p, q))
        if not math.isfinite(value) or value < 0:
            raise EvaluationError(f"Distance oracle returned {value} for the points {p!r} and"
                                  f" {q!r}.")
        return value

    def sample(self, seed: int, n_points: int) -> list[Point]:
        """Draw n_points points from the sampler with a seed."""
        if self.sampler is None:
            raise UnsupportedCapabilityError(f"Space '{self.kind}' has no sampler.")
        points = list(islice(self.sampler(seed), n_points))
        if len(points) < n_points:
            raise UnsupportedCapabilityError(
                f"Sampler of space '{self.kind}' produced only {len(points)} of the"
                f" {n_points} requested points.")
        return points

    def encode(self, point: Point) -> Any:
        """Convert a point to a JSON compatible value."""
        if self.point_encoder is None:
            return point
        return self.point_encoder(point)


def space_distance(handle: SpaceHandle, p: Point, q: Point) -> float:
    """Compute the distance between two points of a space.

    Parameters
    ----------
    handle:
        Space in which to measure.
    p:
        First point.
    q:
        Second point.

    Returns
    -------
        The exact metric value.

    Raises
    ------
    DomainError
        If one of the points does not belong to the space.
    """
    if handle.contains is not None:
        for point in (p, q):
            if not handle.contains(point):
                raise DomainError(f"Point {point!r} does not belong to the space"
                                  f" '{handle.kind}'.")
    return handle.measure(p, q)


def space_midpoint(handle: SpaceHandle, p: Point, q: Point) -> Point:
    """Compute the exact midpoint of two points.

    Raises
    ------
    UnsupportedCapabilityError
        If the space has no midpoint oracle.
    """
    if handle.midpoint_oracle is None:
        raise UnsupportedCapabilityError(f"Space '{handle.kind}' has no midpoint oracle:"
                                         " exact midpoints need not exist.")
    return handle.midpoint_oracle(p, q, 0.0)


def space_geodesic(handle: SpaceHandle, p: Point, q: Point) -> Curve:
    """Compute a geodesic from p to q, affinely parametrized on [0, 1].

    Raises
    ------
    UnsupportedCapabilityError
        If the space has no geodesic oracle.
    """
    if handle.geodesic_oracle is None:
        raise UnsupportedCapabilityError(f"Space '{handle.kind}' has no geodesic oracle.")
    return handle.geodesic_oracle(p, q)


def metric_axiom_sample(handle: SpaceHandle, count: int = 10000, seed: int = 0,
                        tol: float = EXACT_TOL) -> CheckVerdict:
    """Check the metric axioms on randomly drawn triples.

    Tests d(x, x) = 0, symmetry and the triangle inequality
    d(x, z) <= d(x, y) + d(y, z), each in all orders of the triple.

    Parameters
    ----------
    handle:
        Space to check; it needs a sampler.
    count:
        Number of triples.
    seed:
        Seed for the sampler.
    tol:
        Absolute tolerance.

    Returns
    -------
        Verdict, failing cases carry the triple and the violated axiom.
    """
    if handle.sampler is None:
        return CheckVerdict.skipped(f"Space '{handle.kind}' has no sampler.")
    builder = VerdictBuilder(tol)
    points = handle.sample(seed, 3 * count)
    for i_triple in range(count):
        x, y, z = points[3 * i_triple:3 * i_triple + 3]
        dxy, dyz, dxz = handle.measure(x, y), handle.measure(y, z), handle.measure(x, z)
        builder.record(handle.measure(x, x), axiom="identity", points=[x])
        builder.record(abs(dxy - handle.measure(y, x)), axiom="symmetry", points=[x, y])
        builder.record(dxz - dxy - dyz, axiom="triangle inequality", points=[x, y, z])
        builder.record(dxy - dxz - dyz, axiom="triangle inequality", points=[x, z, y])
        builder.record(dyz - dxy - dxz, axiom="triangle inequality", points=[y, x, z])
    verdict = builder.build(triples=count)
    logger.debug("Metric axiom sampling on '%s': %s", handle.kind, verdict.status.value)
    return verdict
