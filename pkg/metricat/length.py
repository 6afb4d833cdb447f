"""Lengths of curves and the induced length metric.

The length of a curve is the supremum of its polygonal lengths over all
partitions. We approximate it from below by dyadic refinement of the parameter
interval, which gives a nondecreasing sequence of estimates.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Any, Sequence

from metricat.curve import Curve, Partition
from metricat.errors import DomainError
from metricat.handle import SpaceHandle
from metricat.verdict import EXACT_TOL, SAMPLED_TOL, CheckVerdict, VerdictBuilder

logger = logging.getLogger(__name__)

INFINITY = math.inf
"""Length metric value for points that no rectifiable candidate curve joins.

Addition and ``min`` saturate on it, ``INFINITY + x == INFINITY`` for every finite x.
"""

DEFAULT_MAX_DEPTH = 20


@dataclass(frozen=True)
class LengthEstimate():
    """Lower bound for the length of a curve.

    Parameters
    ----------
    lower_bound:
        Polygonal length at the finest partition that was evaluated.
    refinement_depth:
        The finest partition had 2**refinement_depth intervals.
    converged:
        Whether two successive depths agreed to the relative tolerance.
    """

    lower_bound: float
    refinement_depth: int
    converged: bool


def polygonal_length(space: SpaceHandle, curve: Curve, partition: Partition) -> float:
    """Sum of the distances between the curve points at consecutive knots.

    Parameters
    ----------
    space:
        Space that the curve lives in.
    curve:
        Curve to measure.
    partition:
        Partition spanning the domain of the curve.

    Returns
    -------
        A lower bound for the length of the curve.

    Raises
    ------
    DomainError
        If the partition does not span the domain of the curve.
    """
    if not partition.spans(curve.domain):
        raise DomainError(f"Partition from {partition.knots[0]} to {partition.knots[-1]} does not"
                          f" span the curve domain {curve.domain}.")
    points = [curve(t) for t in partition.knots]
    return _chord_sum(space, points)


def _chord_sum(space: SpaceHandle, points: Sequence[Any]) -> float:
    return math.fsum(space.measure(p, q) for p, q in zip(points[:-1], points[1:]))


def curve_length(space: SpaceHandle, curve: Curve, rel_tol: float = EXACT_TOL,
                 max_depth: int = DEFAULT_MAX_DEPTH) -> LengthEstimate:
    """Estimate the length of a curve by dyadic refinement.

    The estimate at depth n is the polygonal length for 2**n equal intervals.
    Refinement stops when two successive estimates differ by less than
    ``rel_tol`` relative to the newest one, or at ``max_depth``.

    Parameters
    ----------
    space:
        Space that the curve lives in.
    curve:
        Curve to measure.
    rel_tol:
        Relative tolerance for convergence.
    max_depth:
        Maximum refinement depth.

    Returns
    -------
        Length estimate, whose lower bound never decreases with depth.
    """
    if curve.span == 0:
        return LengthEstimate(0.0, 0, True)
    start, end = curve.domain
    points = [curve(start), curve(end)]
    previous = _chord_sum(space, points)
    best = previous
    for depth in range(1, max_depth + 1):
        n_intervals = 2**depth
        mids = [curve(start + (end - start) * (2 * k + 1) / n_intervals)
                for k in range(n_intervals // 2)]
        refined = [None] * (len(points) + len(mids))
        refined[0::2] = points
        refined[1::2] = mids
        points = refined
        current = _chord_sum(space, points)
        best = max(best, current)
        if abs(current - previous) <= rel_tol * abs(current):
            logger.debug("Curve length converged at depth %d: %s", depth, best)
            return LengthEstimate(best, depth, True)
        previous = current
    logger.debug("Curve length did not converge within depth %d: %s", max_depth, best)
    return LengthEstimate(best, max_depth, False)


def restricted_length(space: SpaceHandle, curve: Curve, start: float, end: float,
                      rel_tol: float = EXACT_TOL,
                      max_depth: int = DEFAULT_MAX_DEPTH) -> LengthEstimate:
    """Length of the restriction of a curve to [start, end]."""
    return curve_length(space, curve.restrict(start, end), rel_tol, max_depth)


def length_metric_estimate(space: SpaceHandle, x: Any, y: Any, candidate_curves: Sequence[Curve],
                           rel_tol: float = SAMPLED_TOL,
                           max_depth: int = DEFAULT_MAX_DEPTH) -> float:
    """Upper bound on the induced length metric between x and y.

    Parameters
    ----------
    space:
        Space containing x and y.
    x:
        Start point.
    y:
        End point.
    candidate_curves:
        Curves from x to y.
    rel_tol:
        Relative tolerance of the individual length estimates.
    max_depth:
        Maximum refinement depth of the individual length estimates.

    Returns
    -------
        Smallest estimated candidate length, :data:`INFINITY` without candidates.

    Raises
    ------
    DomainError
        If a candidate does not join x to y.
    """
    best = INFINITY
    for curve in candidate_curves:
        _check_endpoints(space, curve, x, y)
        estimate = curve_length(space, curve, rel_tol, max_depth)
        best = min(best, estimate.lower_bound)
    return best


def _check_endpoints(space: SpaceHandle, curve: Curve, x: Any, y: Any) -> None:
    first, last = curve.endpoints
    scale = max(1.0, space.measure(x, y))
    if space.measure(first, x) > EXACT_TOL * scale or space.measure(last, y) > EXACT_TOL * scale:
        raise DomainError(f"Candidate curve runs from {first!r} to {last!r}, instead of from"
                          f" {x!r} to {y!r}.")


def is_length_space_sample(space: SpaceHandle, pairs: Sequence[tuple[Any, Any, Sequence[Curve]]],
                           rel_tol: float = SAMPLED_TOL,
                           max_depth: int = DEFAULT_MAX_DEPTH) -> CheckVerdict:
    """Check that the distance equals the length metric on sampled pairs.

    Parameters
    ----------
    space:
        Space to check.
    pairs:
        Triples ``(x, y, candidates)`` with candidate curves from x to y.
    rel_tol:
        Relative tolerance on the gap between best candidate length and distance.
    max_depth:
        Maximum refinement depth of the length estimates.

    Returns
    -------
        PASS if every pair has a converged candidate within rel_tol of the
        distance, FAIL with the pair and the gap when even the lower bounds of all
        candidates exceed it. INCONCLUSIVE when a pair has no candidate or only
        non-converged estimates close to the distance. The worst violation is
        the relative gap.
    """
    builder = VerdictBuilder(rel_tol)
    for x, y, candidates in pairs:
        distance = space.measure(x, y)
        estimates = []
        for curve in candidates:
            _check_endpoints(space, curve, x, y)
            estimates.append(curve_length(space, curve, rel_tol, max_depth))
        if not estimates:
            builder.inconclusive(f"No candidate curve for the pair ({x!r}, {y!r}).")
            continue
        scale = distance if distance > 0 else 1.0
        best = min(estimates, key=lambda est: est.lower_bound)
        converged = [est for est in estimates if est.converged]
        relative_gap = (best.lower_bound - distance) / scale
        if relative_gap > rel_tol or (converged and min(
                est.lower_bound for est in converged) - distance <= rel_tol * scale):
            if converged and relative_gap <= rel_tol:
                best = min(converged, key=lambda est: est.lower_bound)
            gap = best.lower_bound - distance
            builder.record(gap / scale, x=x, y=y, distance=distance, length=best.lower_bound,
                           gap=gap)
            continue
        warnings.warn(f"Length estimates between {x!r} and {y!r} did not converge;"
                      " the verdict for this pair is inconclusive.")
        builder.inconclusive(f"Length estimate for the pair ({x!r}, {y!r}) did not converge.")
    return builder.build(rel_tol=rel_tol)
