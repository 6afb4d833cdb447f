"""Convexity of the metric and approximate midpoints."""

from __future__ import annotations

import logging
import math
from typing import Any, Optional

import numpy as np
from scipy.optimize import brentq

from metricat.curve import Curve
from metricat.errors import DomainError
from metricat.handle import SpaceHandle
from metricat.verdict import EXACT_TOL, CheckVerdict, VerdictBuilder

logger = logging.getLogger(__name__)


def convexity_check(space: SpaceHandle, gamma_1: Curve, gamma_2: Curve, grid: int = 17,
                    tol: float = EXACT_TOL) -> CheckVerdict:
    """Check that t -> d(γ1(t), γ2(t)) lies below its affine interpolation.

    Both curves are read at the same fraction t of their domains, so they should
    be affinely parametrized geodesics.

    Parameters
    ----------
    space:
        Space that the curves live in.
    gamma_1:
        First geodesic.
    gamma_2:
        Second geodesic.
    grid:
        Number of equally spaced fractions in [0, 1].
    tol:
        Absolute tolerance.

    Returns
    -------
        Verdict with the fraction t and both points as witness.
    """
    def at(curve, fraction):
        return curve(curve.start + fraction * curve.span)

    d_start = space.measure(at(gamma_1, 0.0), at(gamma_2, 0.0))
    d_end = space.measure(at(gamma_1, 1.0), at(gamma_2, 1.0))
    builder = VerdictBuilder(tol)
    for t in np.linspace(0, 1, grid):
        p, q = at(gamma_1, t), at(gamma_2, t)
        bound = (1 - t) * d_start + t * d_end
        builder.record(space.measure(p, q) - bound, t=float(t), p=p, q=q, bound=float(bound))
    return builder.build(grid=grid)


def busemann_midpoint_check(space: SpaceHandle, a: Any, b: Any, c: Any,
                            tol: float = EXACT_TOL) -> CheckVerdict:
    """Check d(m, m') <= d(b, c) / 2 for the midpoints m of [a, b] and m' of [a, c]."""
    if space.midpoint_oracle is None:
        return CheckVerdict.skipped(f"Space '{space.kind}' has no midpoint oracle.")
    m_1 = space.midpoint_oracle(a, b, 0.0)
    m_2 = space.midpoint_oracle(a, c, 0.0)
    builder = VerdictBuilder(tol)
    builder.record(space.measure(m_1, m_2) - space.measure(b, c) / 2, a=a, b=b, c=c,
                   midpoints=[m_1, m_2])
    return builder.build()


def approx_midpoint_bound(delta: float, length: float) -> float:
    """Distance bound √(δ(L + δ)) between a δ-midpoint and the midpoint."""
    if delta < 0 or length < 0:
        raise DomainError(f"Need delta >= 0 and L >= 0, got delta={delta}, L={length}.")
    return math.sqrt(delta * (length + delta))


def approx_midpoint_delta(epsilon: float, length: float) -> float:
    """Largest δ for which every δ-midpoint is within ε of the midpoint.

    Solves δ(L + δ) = ε², for points at distance at most L.

    Parameters
    ----------
    epsilon:
        Required closeness, positive.
    length:
        Upper bound L on the distance of the two points, positive.

    Returns
    -------
        The positive root (√(L² + 4ε²) - L)/2.
    """
    if epsilon <= 0 or length <= 0:
        raise DomainError(f"Need epsilon > 0 and L > 0, got epsilon={epsilon}, L={length}.")
    # Rationalized root, exact for small epsilon.
    return 2 * epsilon**2 / (length + math.sqrt(length**2 + 4 * epsilon**2))


def _boundary_point(space: SpaceHandle, x: Any, y: Any, midpoint: Any, target: Any,
                    delta: float, half: float) -> Any:
    """Farthest δ-midpoint on the geodesic from the midpoint towards target."""
    if delta == 0:
        return midpoint
    path = space.geodesic_oracle(midpoint, target)  # type: ignore[misc]

    def excess(fraction: float) -> float:
        point = path(path.start + fraction * path.span)
        return max(space.measure(x, point), space.measure(y, point)) - half - delta

    if excess(1.0) <= 0:
        return target
    fraction = brentq(excess, 0.0, 1.0, xtol=1e-14)
    return path(path.start + fraction * path.span)


def approx_midpoint_closeness_check(space: SpaceHandle, x: Any, y: Any, delta: float,
                                    trials: int = 1000, seed: int = 0, tol: float = EXACT_TOL,
                                    length: Optional[float] = None) -> CheckVerdict:
    """Check that δ-midpoints of x and y lie within √(δ(L + δ)) of the midpoint.

    Each trial draws a point w from the sampler, follows the geodesic from the
    midpoint m towards w and takes the last point on it that is still a
    δ-midpoint. These boundary points are where the bound is attained.

    Parameters
    ----------
    space:
        Space with midpoint and geodesic oracles and a sampler.
    x:
        First point.
    y:
        Second point.
    delta:
        Midpoint slack δ >= 0.
    trials:
        Number of sampled δ-midpoints.
    seed:
        Seed for the sampler.
    tol:
        Absolute tolerance on the bound.
    length:
        Declared upper bound L on d(x, y), defaults to d(x, y).

    Returns
    -------
        Verdict whose violation is the distance to m minus the bound. The
        largest distance found is reported as ``max_distance``.
    """
    missing = [name for name, present in (("midpoint oracle", space.has_midpoints),
                                          ("geodesic oracle", space.has_geodesics),
                                          ("sampler", space.has_sampler)) if not present]
    if missing:
        return CheckVerdict.skipped(f"Space '{space.kind}' has no {' or '.join(missing)}.")
    if delta < 0:
        raise DomainError(f"Midpoint slack should be nonnegative, got {delta}.")
    distance = space.measure(x, y)
    if length is None:
        length = distance
    elif length < distance - tol:
        raise DomainError(f"Declared bound {length} is smaller than d(x, y) = {distance}.")
    bound = approx_midpoint_bound(delta, length)
    midpoint = space.midpoint_oracle(x, y, 0.0)  # type: ignore[misc]
    builder = VerdictBuilder(tol)
    max_distance = 0.0
    for target in space.sample(seed, trials):
        point = _boundary_point(space, x, y, midpoint, target, delta, distance / 2)
        gap = space.measure(midpoint, point)
        max_distance = max(max_distance, gap)
        builder.record(gap - bound, point=point, distance=gap, bound=bound)
    logger.debug("Largest δ-midpoint distance %s against bound %s", max_distance, bound)
    return builder.build(max_distance=max_distance, bound=bound, delta=delta, length=length)
