"""Nearest-point projections onto convex subsets."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import islice
from typing import Any, Callable, Iterator, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from metricat.comparison import alexandrov_angle_estimate
from metricat.curve import Curve
from metricat.errors import NoConvergenceError, UndefinedAngleError
from metricat.handle import SpaceHandle
from metricat.verdict import EXACT_TOL, SAMPLED_TOL

logger = logging.getLogger(__name__)

PROJECTION_BUDGET = 500
ANGLE_SCALES = tuple(2.0**-k for k in range(1, 11))
ANGLE_GRID = 8


@dataclass(frozen=True)
class ConvexSet():
    """A convex subset given by membership, sampling and optionally a curve.

    Parameters
    ----------
    contains:
        Membership test.
    sampler:
        ``seed -> iterator`` of points in the set.
    curve:
        Geodesic whose image is the whole set, if the set is a segment.
    name:
        Name used in log messages.
    """

    contains: Callable[[Any], bool]
    sampler: Callable[[int], Iterator[Any]]
    curve: Optional[Curve] = None
    name: str = "set"

    @classmethod
    def segment(cls, space: SpaceHandle, start: Any, end: Any) -> ConvexSet:
        """Geodesic segment between two points, from the geodesic oracle."""
        curve = space.geodesic_oracle(start, end)  # type: ignore[misc]
        length = space.measure(start, end)

        def contains(point: Any) -> bool:
            gap = space.measure(start, point) + space.measure(point, end) - length
            return gap <= EXACT_TOL * max(1.0, length)

        def sampler(seed: int) -> Iterator[Any]:
            rng = np.random.default_rng(seed)
            while True:
                yield curve(rng.uniform(curve.start, curve.end))

        return cls(contains, sampler, curve, name=f"segment({start!r}, {end!r})")


@dataclass(frozen=True)
class ProjectionResult():
    """Nearest point of a convex set.

    Parameters
    ----------
    point:
        The projection π(x).
    distance:
        d(x, π(x)).
    angle_check:
        Smallest Alexandrov angle at π(x) between x and sampled set points;
        absent when x lies in the set or the space has no geodesic oracle.
    unique:
        Whether no sampled set point far from π(x) is equally close to x.
    """

    point: Any
    distance: float
    angle_check: Optional[float]
    unique: bool = True


def _project_on_curve(space: SpaceHandle, curve: Curve, x: Any) -> tuple[Any, float]:
    def objective(t: float) -> float:
        return space.measure(x, curve(t))

    result = minimize_scalar(objective, bounds=curve.domain, method="bounded",
                             options={"xatol": 1e-12})
    candidates = [(float(result.fun), curve(float(result.x)))]
    candidates += [(objective(t), curve(t)) for t in curve.domain]
    distance, point = min(candidates, key=lambda cand: cand[0])
    return point, distance


def _line_search(space: SpaceHandle, x: Any, best: Any, toward: Any) -> tuple[Any, float]:
    path = space.geodesic_oracle(best, toward)  # type: ignore[misc]
    return _project_on_curve(space, path, x)


def _search(space: SpaceHandle, convex_set: ConvexSet, x: Any, tol: float, budget: int,
            seed: int) -> tuple[Any, float]:
    """Seeded search, improved by line searches along geodesics inside the set."""
    best, best_distance = None, math.inf
    halfway = math.inf
    for i_sample, point in enumerate(islice(convex_set.sampler(seed), budget)):
        if i_sample == budget // 2:
            halfway = best_distance
        if best is not None and space.has_geodesics:
            point, distance = _line_search(space, x, best, point)
        else:
            distance = space.measure(x, point)
        if distance < best_distance:
            best, best_distance = point, distance
    if best is None:
        raise NoConvergenceError(f"Set '{convex_set.name}' did not produce any points.")
    if halfway - best_distance > tol:
        raise NoConvergenceError(f"Projection onto '{convex_set.name}' did not stabilize within"
                                 f" {budget} samples: {halfway} at half the budget, then"
                                 f" {best_distance}.")
    logger.debug("Projection search on '%s' stabilized at %s", convex_set.name, best_distance)
    return best, best_distance


def project_to_convex(space: SpaceHandle, convex_set: ConvexSet, x: Any,
                      tol: float = SAMPLED_TOL, budget: int = PROJECTION_BUDGET, seed: int = 0,
                      angle_samples: int = 16) -> ProjectionResult:
    """Project a point onto a convex set.

    Segments are handled by bounded scalar minimization along the segment.
    Other sets are searched with their sampler, with line searches along
    geodesics between the current best point and each new sample.

    Parameters
    ----------
    space:
        Space containing the set.
    convex_set:
        The convex set.
    x:
        Point to project.
    tol:
        Tolerance for stabilization, uniqueness and closer sampled points.
    budget:
        Number of set samples for the search, at least 2.
    seed:
        Seed for the search and for the sampled check points.
    angle_samples:
        Number of set points used for the uniqueness and angle checks.

    Returns
    -------
        The projection with its distance, angle check and uniqueness flag.

    Raises
    ------
    NoConvergenceError
        If the search has not stabilized within the budget.
    """
    if budget < 2:
        raise ValueError(f"Projection budget should be at least 2, got {budget}.")
    search_seed, check_seed = (int(child.generate_state(1)[0])
                               for child in np.random.SeedSequence(seed).spawn(2))
    if convex_set.curve is not None:
        point, distance = _project_on_curve(space, convex_set.curve, x)
    else:
        point, distance = _search(space, convex_set, x, tol, budget, search_seed)

    checks = list(islice(convex_set.sampler(check_seed), angle_samples))
    for other in checks:
        other_distance = space.measure(x, other)
        if other_distance < distance - tol:
            logger.debug("Sampled set point %r is closer than the search result.", other)
            point, distance = other, other_distance
    threshold = 2 * math.sqrt(max(distance, 1.0) * tol)
    unique = not any(abs(space.measure(x, other) - distance) <= tol
                     and space.measure(other, point) > threshold for other in checks)

    angle_check = None
    if distance > tol and space.has_geodesics:
        to_x = space.geodesic_oracle(point, x)  # type: ignore[misc]
        angles = []
        for other in checks:
            if space.measure(point, other) <= tol:
                continue
            try:
                angles.append(alexandrov_angle_estimate(
                    space, to_x, space.geodesic_oracle(point, other),  # type: ignore[misc]
                    ANGLE_SCALES, ANGLE_GRID).value)
            except UndefinedAngleError:
                continue
        if angles:
            angle_check = min(angles)
    return ProjectionResult(point, distance, angle_check, unique)
