"""Geodesics: constant-speed checks, ε-midpoints and the dyadic construction.

A geodesic is a curve with d(γ(t), γ(t')) = λ|t - t'| for a constant speed λ.
Geodesics are built from midpoints: pick an ε-midpoint of the endpoints, then
midpoints of both halves, and so on. Without exact midpoints, the ε at
level n shrinks like 4**-n so that the limit is Lipschitz.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import islice
from typing import Any, Optional, Sequence

import numpy as np

from metricat.curve import Curve, Polyline
from metricat.errors import (
    CertificateError,
    DegenerateCurveError,
    IncompleteSpaceError,
    MidpointNotFoundError,
    NoConvergenceError,
    UnsupportedCapabilityError,
)
from metricat.handle import SpaceHandle
from metricat.verdict import EXACT_TOL, SAMPLED_TOL, CheckVerdict, VerdictBuilder

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10000
CANDIDATE_GRID = 33
MAX_BUDGET_GROWTH = 16


@dataclass(frozen=True)
class GeodesicWitness():
    """Result of testing a curve for the geodesic property.

    Parameters
    ----------
    curve:
        The tested curve.
    speed:
        Estimated speed λ.
    max_deviation:
        Largest value of |d(γ(t), γ(t')) - λ|t - t'|| over the tested pairs.
    mode:
        ``"global"`` or ``"local"``.
    window:
        Locality radius in parameter units (local mode only).
    certified:
        Whether the maximum deviation is within the tolerance.
    """

    curve: Curve
    speed: float
    max_deviation: float
    mode: str
    window: Optional[float] = None
    certified: bool = False


@dataclass(frozen=True)
class MidpointResult():
    """An approximate midpoint and the ε it achieves.

    Parameters
    ----------
    point:
        The midpoint candidate z.
    epsilon:
        max(d(x, z), d(y, z)) - d(x, y)/2, clipped at 0.
    """

    point: Any
    epsilon: float


def midpoint_defect(space: SpaceHandle, x: Any, y: Any, z: Any,
                    dxy: Optional[float] = None) -> float:
    """Return the smallest ε for which z is an ε-midpoint of x and y."""
    if dxy is None:
        dxy = space.measure(x, y)
    return max(0.0, max(space.measure(x, z), space.measure(y, z)) - dxy / 2)


def is_geodesic(space: SpaceHandle, curve: Curve, grid_size: int = 17, tol: float = EXACT_TOL,
                mode: str = "global", window: Optional[float] = None) -> GeodesicWitness:
    """Test whether a curve has constant speed on a grid.

    Parameters
    ----------
    space:
        Space that the curve lives in.
    curve:
        Curve to test.
    grid_size:
        Number of equally spaced parameters, at least 2.
    tol:
        Tolerance on the deviation from constant speed.
    mode:
        ``"global"`` checks all grid pairs with λ = d(endpoints)/|domain|.
        ``"local"`` checks only pairs closer than ``window`` in parameter, with
        λ the median speed of neighbouring grid points.
    window:
        Locality radius for the local mode.

    Returns
    -------
        Witness with speed and maximum deviation.
    """
    if grid_size < 2:
        raise ValueError(f"Grid size should be at least 2, got {grid_size}.")
    if mode not in ("global", "local"):
        raise ValueError(f"Unknown mode '{mode}', use 'global' or 'local'.")
    if mode == "local" and (window is None or window <= 0):
        raise ValueError("The local mode needs a positive window.")
    params, points = curve.sample(grid_size)
    if curve.span == 0:
        return GeodesicWitness(curve, 0.0, 0.0, mode, window, True)
    if mode == "global":
        speed = space.measure(points[0], points[-1]) / curve.span
    else:
        steps = params[1] - params[0]
        speed = float(np.median([space.measure(p, q) / steps
                                 for p, q in zip(points[:-1], points[1:])]))
    max_dev = 0.0
    for i in range(grid_size):
        for j in range(i + 1, grid_size):
            gap = params[j] - params[i]
            if mode == "local" and gap > window + 1e-12:  # type: ignore[operator]
                break
            max_dev = max(max_dev, abs(space.measure(points[i], points[j]) - speed * gap))
    logger.debug("Geodesic test (%s): speed %s, deviation %s", mode, speed, max_dev)
    return GeodesicWitness(curve, speed, max_dev, mode, window, max_dev <= tol)


def find_epsilon_midpoint(space: SpaceHandle, x: Any, y: Any, epsilon: float = 0.0,
                          budget: int = DEFAULT_BUDGET, seed: int = 0) -> MidpointResult:
    """Find an ε-midpoint of x and y.

    The midpoint oracle is used first, then the midpoint of the geodesic oracle,
    then the best grid point on the candidate curves. Otherwise ``budget`` points
    are drawn from the sampler and the point with the smallest max(d(x, z), d(y, z))
    is kept; ties go to the first one drawn.

    Parameters
    ----------
    space:
        Space containing x and y.
    x:
        First point.
    y:
        Second point.
    epsilon:
        Required precision, nonnegative.
    budget:
        Number of sampled candidates for the search.
    seed:
        Seed for the sampler.

    Returns
    -------
        Point with its achieved ε.

    Raises
    ------
    MidpointNotFoundError
        If the search does not find a point within ε.
    UnsupportedCapabilityError
        If ε = 0 and there is no oracle, or there is nothing to search with.
    """
    if epsilon < 0:
        raise ValueError(f"Epsilon should be nonnegative, got {epsilon}.")
    dxy = space.measure(x, y)
    if space.midpoint_oracle is not None:
        point = space.midpoint_oracle(x, y, epsilon)
        achieved = midpoint_defect(space, x, y, point, dxy)
        if achieved <= epsilon + EXACT_TOL * max(1.0, dxy):
            return MidpointResult(point, achieved)
        logger.debug("Midpoint oracle missed epsilon %s (achieved %s)", epsilon, achieved)
    if space.geodesic_oracle is not None:
        curve = space.geodesic_oracle(x, y)
        point = curve((curve.start + curve.end) / 2)
        achieved = midpoint_defect(space, x, y, point, dxy)
        if achieved <= epsilon + EXACT_TOL * max(1.0, dxy):
            return MidpointResult(point, achieved)
    best_point, best_eps = _best_on_candidates(space, x, y, dxy)
    if best_point is not None and best_eps <= epsilon:
        return MidpointResult(best_point, best_eps)
    if space.sampler is None and best_point is None:
        raise UnsupportedCapabilityError(f"Space '{space.kind}' has neither midpoint nor geodesic"
                                         " oracle, nor a sampler to search with.")
    if epsilon == 0:
        raise UnsupportedCapabilityError(f"Space '{space.kind}' cannot produce exact midpoints:"
                                         " it has no midpoint or geodesic oracle.")
    samples = [] if space.sampler is None else islice(space.sampler(seed), budget)
    for candidate in samples:
        achieved = midpoint_defect(space, x, y, candidate, dxy)
        if achieved < best_eps:
            best_point, best_eps = candidate, achieved
    if best_point is None or best_eps > epsilon:
        raise MidpointNotFoundError(
            f"No {epsilon}-midpoint of {x!r} and {y!r} on the candidate curves or among"
            f" {budget} sampled points"
            f" (best achieved {best_eps}).", pair=(x, y),
            best=None if best_point is None else (best_point, best_eps))
    return MidpointResult(best_point, best_eps)


def _best_on_candidates(space: SpaceHandle, x: Any, y: Any,
                        dxy: float) -> tuple[Optional[Any], float]:
    best_point, best_eps = None, np.inf
    if space.candidate_oracle is None:
        return best_point, best_eps
    for curve in space.candidate_oracle(x, y):
        for t in np.linspace(curve.start, curve.end, CANDIDATE_GRID):
            point = curve(t)
            achieved = midpoint_defect(space, x, y, point, dxy)
            if achieved < best_eps:
                best_point, best_eps = point, achieved
    return best_point, best_eps


def dyadic_geodesic(space: SpaceHandle, x: Any, y: Any, depth: int, epsilon_total: float = 1e-2,
                    budget: int = DEFAULT_BUDGET, seed: int = 0) -> Polyline:
    """Construct a path from x to y by recursive approximate midpoints.

    At level n every pair of neighbouring points receives an ε_n-midpoint with
    ε_n = epsilon_total / 4**n. The result lives on the dyadic grid k / 2**depth
    of [0, 1] and is evaluated at the nearest grid point in between.

    Parameters
    ----------
    space:
        Space containing x and y.
    x:
        Start point.
    y:
        End point.
    depth:
        Number of bisection levels, at least 1.
    epsilon_total:
        Total midpoint precision ε.
    budget:
        Search budget per midpoint when no oracle is available.
    seed:
        Base seed for searched midpoints.

    Returns
    -------
        Polyline through the 2**depth + 1 constructed points.

    Raises
    ------
    MidpointNotFoundError
        If a midpoint search fails; the error carries the failing sub-pair.
    CertificateError
        If the result is not (d(x, y) + ε)-Lipschitz on the grid.
    """
    if depth < 1:
        raise ValueError(f"Depth should be at least 1, got {depth}.")
    if epsilon_total <= 0:
        raise ValueError(f"Total epsilon should be positive, got {epsilon_total}.")
    n_points = 2**depth + 1
    points: list[Any] = [None] * n_points
    points[0], points[-1] = x, y
    seeds = np.random.SeedSequence(seed)
    for level in range(1, depth + 1):
        step = 2**(depth - level)
        eps_level = epsilon_total / 4**level
        level_seeds = seeds.spawn(2**(level - 1))
        for i_mid, k in enumerate(range(step, n_points, 2 * step)):
            left, right = points[k - step], points[k + step]
            try:
                result = find_epsilon_midpoint(
                    space, left, right, eps_level, budget,
                    int(level_seeds[i_mid].generate_state(1)[0]))
            except MidpointNotFoundError as error:
                raise MidpointNotFoundError(
                    f"Dyadic construction failed at level {level} between {left!r} and"
                    f" {right!r}: {error}", pair=(left, right), best=error.best) from error
            points[k] = result.point
    curve = Polyline(np.linspace(0, 1, n_points), points)
    _certify_lipschitz(space, points, space.measure(x, y) + epsilon_total)
    return curve


def _certify_lipschitz(space: SpaceHandle, points: Sequence[Any], constant: float) -> None:
    n_intervals = len(points) - 1
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            bound = constant * (j - i) / n_intervals + EXACT_TOL
            value = space.measure(points[i], points[j])
            if value > bound:
                raise CertificateError(
                    f"Dyadic path is not {constant}-Lipschitz: d = {value} > {bound} between"
                    f" grid points {i} and {j}.")


def midpoint_limit(space: SpaceHandle, x: Any, y: Any,
                   schedule: Optional[Sequence[float]] = None, tol: float = SAMPLED_TOL,
                   budget: int = DEFAULT_BUDGET, seed: int = 0) -> MidpointResult:
    """Find a midpoint of x and y as a limit of ε_j-midpoints.

    The ε_j-midpoints are followed along the whole schedule, each searched with its
    own seed and a budget that doubles per step up to 16 times ``budget``. An exact
    midpoint ends the sequence early. If the searches stall before the schedule
    ends, the sequence is judged on the points found so far.

    Parameters
    ----------
    space:
        Space containing x and y.
    x:
        First point.
    y:
        Second point.
    schedule:
        Decreasing positive ε values, by default 2**-j for j = 1..30.
    tol:
        Tolerance for the final midpoint check; the Cauchy tolerance is tol / 2.
    budget:
        Search budget for the first ε_j when no oracle is available.
    seed:
        Seed from which the seeds of the individual searches are spawned.

    Returns
    -------
        The limit point, a midpoint within tol.

    Raises
    ------
    NoConvergenceError
        If the last two midpoints are not within the Cauchy tolerance.
    IncompleteSpaceError
        If they are, but the last point is not a midpoint within tol, or the
        searches stall in a space that is not declared complete: the limit is not
        in the space.
    """
    if schedule is None:
        schedule = [2.0**-j for j in range(1, 31)]
    schedule = [float(eps) for eps in schedule]
    if any(eps <= 0 for eps in schedule) or any(
            e1 <= e2 for e1, e2 in zip(schedule[:-1], schedule[1:])):
        raise ValueError("The schedule should be a strictly decreasing sequence of positive"
                         " numbers.")
    exact_tol = EXACT_TOL * max(1.0, space.measure(x, y))
    cauchy_tol = tol / 2
    step_seeds = np.random.SeedSequence(seed).spawn(len(schedule))
    results: list[MidpointResult] = []
    stalled = False
    for step, eps in enumerate(schedule):
        step_budget = min(budget * 2**step, MAX_BUDGET_GROWTH * budget)
        try:
            result = find_epsilon_midpoint(space, x, y, eps, step_budget,
                                           int(step_seeds[step].generate_state(1)[0]))
        except MidpointNotFoundError:
            logger.debug("No %s-midpoint found, the sequence stalls.", eps)
            stalled = True
            break
        if result.epsilon <= exact_tol:
            return result
        results.append(result)
    if len(results) < 2 or space.measure(results[-2].point, results[-1].point) > cauchy_tol:
        raise NoConvergenceError(f"Approximate midpoints of {x!r} and {y!r} did not form a Cauchy"
                                 f" sequence within {len(results)} of {len(schedule)} steps.")
    last = results[-1]
    if last.epsilon > tol or (stalled and not space.completeness_flag):
        raise IncompleteSpaceError(
            f"Approximate midpoints of {x!r} and {y!r} settle on {last.point!r}, which is only a"
            f" {last.epsilon}-midpoint and cannot be improved: the limit is missing from the"
            " space.", candidate=last.point, epsilon=last.epsilon)
    return last


def unit_reparametrize(space: SpaceHandle, curve: Curve,
                       target_domain: Optional[tuple[float, float]] = None) -> Curve:
    """Reparametrize a geodesic affinely onto a new domain.

    Parameters
    ----------
    space:
        Space that the curve lives in.
    curve:
        A geodesic.
    target_domain:
        New domain; by default [0, d(endpoints)], which gives speed 1.

    Returns
    -------
        Affine reparametrization of the curve.

    Raises
    ------
    DegenerateCurveError
        If the curve is constant but the target domain is not a point.
    """
    length = space.measure(*curve.endpoints)
    if target_domain is None:
        target_domain = (0.0, length)
    if length == 0 and target_domain[1] > target_domain[0]:
        raise DegenerateCurveError("A zero-length curve cannot be stretched over"
                                   f" {target_domain}.")
    if tuple(target_domain) == curve.domain:
        return curve
    return curve.reparametrize(target_domain)


def unique_geodesic_check(space: SpaceHandle, x: Any, y: Any, grid_size: int = 17,
                          tol: float = SAMPLED_TOL, depth: int = 4) -> CheckVerdict:
    """Compare independently obtained geodesics between x and y.

    The oracle geodesic from x to y is compared on a grid with the reversed
    oracle geodesic from y to x and, when exact midpoints exist, with the dyadic
    construction.

    Returns
    -------
        PASS if all agree within tol, FAIL with the parameter and the two points.
    """
    if space.geodesic_oracle is None:
        return CheckVerdict.skipped(f"Space '{space.kind}' has no geodesic oracle.")
    reference = space.geodesic_oracle(x, y)
    others = {"reversed": space.geodesic_oracle(y, x).reverse()}
    if space.midpoint_oracle is not None:
        others["dyadic"] = dyadic_geodesic(space, x, y, depth, EXACT_TOL)
    builder = VerdictBuilder(tol)
    params = np.linspace(0, 1, 2**depth + 1) if "dyadic" in others else np.linspace(0, 1,
                                                                                   grid_size)
    for name, other in others.items():
        for t in params:
            p = reference(reference.start + t * reference.span)
            q = other(other.start + t * other.span)
            builder.record(space.measure(p, q), construction=name, t=float(t), points=[p, q])
    return builder.build()


def local_geodesic_check(space: SpaceHandle, curve: Curve, window: float, grid_size: int = 33,
                         tol: float = EXACT_TOL) -> CheckVerdict:
    """Check that a local geodesic is a geodesic.

    Returns
    -------
        PASS when the curve is not a local geodesic or is also a global
        geodesic. FAIL when it is local but not global.
    """
    local = is_geodesic(space, curve, grid_size, tol, "local", window)
    builder = VerdictBuilder(tol)
    if not local.certified:
        builder.record(-1.0, reason="not a local geodesic")
        return builder.build(local_deviation=local.max_deviation)
    glob = is_geodesic(space, curve, grid_size, tol, "global")
    builder.record(glob.max_deviation, domain=list(curve.domain),
                   endpoints=list(curve.endpoints), speed=glob.speed)
    return builder.build(local_deviation=local.max_deviation, local_speed=local.speed)
