"""Triangle comparison checks.

A geodesic triangle satisfies the CAT(0) inequality when no two of its points
are further apart than the corresponding points of its comparison triangle.
Three equivalent formulations are available: distances from a vertex to the
opposite side, comparison angles at the vertices, and Alexandrov angles at the
vertices.
"""

from __future__ import annotations

import logging
from typing import Any, Optional, Sequence

import numpy as np

from metricat.comparison import (
    GeodesicTriangle,
    alexandrov_angle_estimate,
    comparison_angle,
    comparison_point,
)
from metricat.errors import DomainError
from metricat.handle import SpaceHandle
from metricat.verdict import EXACT_TOL, SAMPLED_TOL, CheckVerdict, Status, VerdictBuilder

logger = logging.getLogger(__name__)

MODES = ("cat0-inequality", "vertex-distance", "angle-comparison", "alexandrov-angle")
OPPOSITE_SIDE = {"x": "yz", "y": "xz", "z": "xy"}


def _side_samples(space: SpaceHandle, triangle: GeodesicTriangle, side: str, grid: int):
    """Points on a side at equally spaced arc lengths, with their comparison points."""
    comp = triangle.comparison(space)
    curve = triangle.side(side)
    length = comp.side_length(side)
    samples = []
    for fraction in np.linspace(0, 1, grid):
        point = curve(curve.start + fraction * curve.span)
        samples.append((side, float(fraction), point,
                        comparison_point(comp, side, fraction * length)))
    return samples


def cat0_triangle_check(space: SpaceHandle, triangle: GeodesicTriangle, grid: int = 9,
                        tol: float = EXACT_TOL) -> CheckVerdict:
    """Check the CAT(0) inequality for a geodesic triangle on a grid.

    Every side is sampled at ``grid`` equally spaced arc lengths, endpoints
    included. For every pair of sampled points (p, q) the check is
    d(p, q) <= |p̄ - q̄| + tol.

    Parameters
    ----------
    space:
        Space that the triangle lives in.
    triangle:
        The vertices x, y, z and the three geodesic sides.
    grid:
        Number of points per side.
    tol:
        Absolute tolerance.

    Returns
    -------
        Verdict whose worst violation is max(d(p, q) - |p̄ - q̄|).

    Raises
    ------
    NotEmbeddableError
        If the side lengths do not satisfy the triangle inequality.
    """
    samples = []
    for side in ("xy", "xz", "yz"):
        samples.extend(_side_samples(space, triangle, side, grid))
    builder = VerdictBuilder(tol)
    for i, (side_p, frac_p, p, p_bar) in enumerate(samples):
        for side_q, frac_q, q, q_bar in samples[i + 1:]:
            builder.record(space.measure(p, q) - float(np.linalg.norm(p_bar - q_bar)),
                           p=p, q=q, sides=[side_p, side_q], fractions=[frac_p, frac_q])
    return builder.build(mode="cat0-inequality", grid=grid)


def _vertex_distance_check(space, triangle, grid, tol) -> CheckVerdict:
    comp = triangle.comparison(space)
    builder = VerdictBuilder(tol)
    for i_vertex, vertex in enumerate("xyz"):
        apex = triangle.vertices[i_vertex]
        for side, fraction, point, point_bar in _side_samples(space, triangle,
                                                              OPPOSITE_SIDE[vertex], grid):
            builder.record(space.measure(apex, point)
                           - float(np.linalg.norm(comp.vertices[i_vertex] - point_bar)),
                           vertex=vertex, p=point, side=side, fraction=fraction)
    return builder.build(mode="vertex-distance", grid=grid)


def _angle_comparison_check(space, triangle, grid, tol) -> CheckVerdict:
    comp = triangle.comparison(space)
    builder = VerdictBuilder(tol)
    fractions = np.linspace(0, 1, grid)[1:]
    for i_vertex, vertex in enumerate("xyz"):
        apex = triangle.vertices[i_vertex]
        side_1, side_2 = triangle.sides_at(vertex)
        if (space.measure(apex, side_1(side_1.end)) <= 0
                or space.measure(apex, side_2(side_2.end)) <= 0):
            continue
        reference = comp.angle(vertex)
        points_1 = [side_1(side_1.start + f * side_1.span) for f in fractions]
        points_2 = [side_2(side_2.start + f * side_2.span) for f in fractions]
        for frac_p, p in zip(fractions, points_1):
            d_p = space.measure(apex, p)
            if d_p <= 0:
                continue
            for frac_q, q in zip(fractions, points_2):
                d_q = space.measure(apex, q)
                if d_q <= 0:
                    continue
                angle = comparison_angle(d_p, d_q, space.measure(p, q))
                builder.record(angle - reference, vertex=vertex, p=p, q=q,
                               fractions=[float(frac_p), float(frac_q)], angle=angle,
                               comparison_angle=reference)
    return builder.build(mode="angle-comparison", grid=grid)


def _alexandrov_angle_check(space, triangle, scales, tol) -> CheckVerdict:
    comp = triangle.comparison(space)
    builder = VerdictBuilder(tol)
    for i_vertex, vertex in enumerate("xyz"):
        apex = triangle.vertices[i_vertex]
        side_1, side_2 = triangle.sides_at(vertex)
        if (space.measure(apex, side_1(side_1.end)) <= 0
                or space.measure(apex, side_2(side_2.end)) <= 0):
            continue
        estimate = alexandrov_angle_estimate(space, side_1, side_2, scales)
        reference = comp.angle(vertex)
        builder.record(estimate.value - reference, vertex=vertex, angle=estimate.value,
                       comparison_angle=reference, certified=estimate.certified_upper)
    return builder.build(mode="alexandrov-angle")


def equivalent_condition_check(space: SpaceHandle, triangle: GeodesicTriangle,
                               mode: str = "vertex-distance", grid: int = 9,
                               scales: Optional[Sequence[float]] = None,
                               tol: Optional[float] = None) -> CheckVerdict:
    """Check one of the equivalent formulations of the CAT(0) condition.

    Parameters
    ----------
    space:
        Space that the triangle lives in.
    triangle:
        Geodesic triangle.
    mode:
        ``"vertex-distance"``: d(v, p) <= |v̄ - p̄| for every vertex v and p on
        the opposite side.
        ``"angle-comparison"``: the comparison angle at v of (v, p, q), with p and
        q on the two sides at v, is at most the angle of the comparison triangle.
        ``"alexandrov-angle"``: the Alexandrov angle between the sides at v is at
        most the angle of the comparison triangle.
        ``"cat0-inequality"``: the CAT(0) inequality itself.
    grid:
        Number of points per side.
    scales:
        Scales for the Alexandrov angle estimates.
    tol:
        Tolerance; by default exact for the distance modes and sampled for the
        angle modes.

    Returns
    -------
        Verdict with witnesses.
    """
    if mode not in MODES:
        raise ValueError(f"Unknown mode '{mode}', use one of {MODES}.")
    if tol is None:
        tol = EXACT_TOL if mode in ("cat0-inequality", "vertex-distance") else SAMPLED_TOL
    if mode == "cat0-inequality":
        return cat0_triangle_check(space, triangle, grid, tol)
    if mode == "vertex-distance":
        return _vertex_distance_check(space, triangle, grid, tol)
    if mode == "angle-comparison":
        return _angle_comparison_check(space, triangle, grid, tol)
    return _alexandrov_angle_check(space, triangle, scales, tol)


def gluing_check(space: SpaceHandle, p: Any, q_1: Any, q_2: Any, r: Any, grid: int = 9,
                 tol: float = SAMPLED_TOL) -> CheckVerdict:
    """Check that gluing two triangles that pass the angle test gives one that passes.

    The triangle (p, q_1, q_2) is split along the geodesic from p to a point r
    on the side [q_1, q_2]. If both triangles (p, q_1, r) and (p, r, q_2) pass
    the angle-comparison test, the triangle (p, q_1, q_2) has to pass it too.

    Parameters
    ----------
    space:
        Space with a geodesic oracle.
    p:
        Apex of the triangle.
    q_1:
        Second vertex.
    q_2:
        Third vertex.
    r:
        Point on the geodesic from q_1 to q_2.
    grid:
        Number of points per side.
    tol:
        Tolerance for the angle comparisons and for r lying on the side.

    Returns
    -------
        FAIL only if both parts pass and the whole fails. When r coincides with
        q_1 or q_2 the verdict of the whole triangle is returned.

    Raises
    ------
    DomainError
        If r does not lie on a geodesic from q_1 to q_2.
    """
    d_1, d_2 = space.measure(q_1, r), space.measure(r, q_2)
    if abs(d_1 + d_2 - space.measure(q_1, q_2)) > tol:
        raise DomainError(f"Point {r!r} does not lie between {q_1!r} and {q_2!r}.")
    whole = equivalent_condition_check(space, GeodesicTriangle.from_space(space, p, q_1, q_2),
                                       "angle-comparison", grid, tol=tol)
    if d_1 <= tol or d_2 <= tol:
        return CheckVerdict(whole.status, whole.worst_violation, whole.witness,
                            dict(whole.details, short_circuit=True))
    part_1 = equivalent_condition_check(space, GeodesicTriangle.from_space(space, p, q_1, r),
                                        "angle-comparison", grid, tol=tol)
    part_2 = equivalent_condition_check(space, GeodesicTriangle.from_space(space, p, r, q_2),
                                        "angle-comparison", grid, tol=tol)
    details = {"parts": [part_1.status.value, part_2.status.value], "whole": whole.status.value}
    if part_1.passed and part_2.passed and whole.failed:
        return CheckVerdict(Status.FAIL, whole.worst_violation, whole.witness, details)
    worst = whole.worst_violation if part_1.passed and part_2.passed else 0.0
    return CheckVerdict(Status.PASS, worst, [], details)
