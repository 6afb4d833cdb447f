"""Detection of flat triangles, flat quadrilaterals and flat strips.

Each detector compares the space with a planar model on a grid of points in
the convex hull of the data. The isometry defect is the largest value of
|d(p, q) - |p̄ - q̄|| over pairs of grid points.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from metricat.comparison import (
    GeodesicTriangle,
    alexandrov_angle_estimate,
    build_comparison_triangle,
)
from metricat.curve import Curve
from metricat.errors import DomainError, UnsupportedCapabilityError
from metricat.handle import SpaceHandle
from metricat.verdict import SAMPLED_TOL

logger = logging.getLogger(__name__)

FLATNESS_MODES = ("triangle", "quadrilateral", "strip")


@dataclass(frozen=True)
class FlatnessReport():
    """Outcome of a flatness detector.

    Parameters
    ----------
    kind:
        ``"triangle"``, ``"quadrilateral"`` or ``"strip"``.
    detected:
        Whether the data span a flat region.
    isometry_defect:
        Largest distance distortion between the grid and its planar model.
    strip_width:
        Constant distance D between the two lines (strip mode only).
    details:
        Angles and other intermediate values.
    """

    kind: str
    detected: bool
    isometry_defect: float
    strip_width: Optional[float] = None
    details: dict = field(default_factory=dict)


def _isometry_defect(space: SpaceHandle, points: Sequence[Any],
                     planar: Sequence[np.ndarray]) -> float:
    planar_arr = np.asarray(planar)
    defect = 0.0
    for i, p in enumerate(points):
        planar_dist = np.linalg.norm(planar_arr[i + 1:] - planar_arr[i], axis=1)
        for q, q_bar in zip(points[i + 1:], planar_dist):
            defect = max(defect, abs(space.measure(p, q) - float(q_bar)))
    return defect


def _fan(space: SpaceHandle, apex: Any, apex_bar: np.ndarray, base: Curve,
         base_bar: tuple[np.ndarray, np.ndarray], grid: int):
    """Grid on the geodesics from an apex to the points of a base segment."""
    points, planar = [], []
    for f in np.linspace(0, 1, grid):
        target = base(base.start + f * base.span)
        target_bar = (1 - f) * base_bar[0] + f * base_bar[1]
        ray = space.geodesic_oracle(apex, target)  # type: ignore[misc]
        for s in np.linspace(0, 1, grid):
            points.append(ray(ray.start + s * ray.span))
            planar.append((1 - s) * apex_bar + s * target_bar)
    return points, planar


def _vertex_angle(space: SpaceHandle, curve_1: Curve, curve_2: Curve,
                  scales: Optional[Sequence[float]]) -> float:
    return alexandrov_angle_estimate(space, curve_1, curve_2, scales).value


def _detect_triangle(space, data, grid, scales, tol) -> FlatnessReport:
    triangle, vertex = data
    if vertex not in ("x", "y", "z"):
        raise DomainError(f"Vertex should be 'x', 'y' or 'z', got {vertex!r}.")
    if not isinstance(triangle, GeodesicTriangle):
        raise DomainError("Triangle mode needs a geodesic triangle and a vertex name.")
    comp = triangle.comparison(space)
    angle = _vertex_angle(space, *triangle.sides_at(vertex), scales)
    reference = comp.angle(vertex)
    i_vertex = "xyz".index(vertex)
    opposite = {"x": "yz", "y": "xz", "z": "xy"}[vertex]
    i_first, i_second = ("xyz".index(opposite[0]), "xyz".index(opposite[1]))
    points, planar = _fan(space, triangle.vertices[i_vertex], comp.vertices[i_vertex],
                          triangle.side(opposite),
                          (comp.vertices[i_first], comp.vertices[i_second]), grid)
    defect = _isometry_defect(space, points, planar)
    detected = abs(angle - reference) <= tol and defect <= tol
    return FlatnessReport("triangle", detected, defect,
                          details={"angle": angle, "comparison_angle": reference,
                                   "vertex": vertex})


def _detect_quadrilateral(space, data, grid, scales, tol) -> FlatnessReport:
    p, q, r, s = data
    geo = space.geodesic_oracle
    angles = [
        _vertex_angle(space, geo(p, q), geo(p, s), scales),
        _vertex_angle(space, geo(q, r), geo(q, p), scales),
        _vertex_angle(space, geo(r, s), geo(r, q), scales),
        _vertex_angle(space, geo(s, p), geo(s, r), scales),
    ]
    angle_sum = math.fsum(angles)
    if angle_sum < 2 * math.pi - tol:
        raise DomainError(f"Angle sum {angle_sum} of the quadrilateral is below 2π.")
    d_qs = space.measure(q, s)
    p_bar = build_comparison_triangle(d_qs, space.measure(q, p), space.measure(s, p)).vertices[2]
    r_bar = build_comparison_triangle(d_qs, space.measure(q, r),
                                      space.measure(s, r)).vertices[2] * np.array([1.0, -1.0])
    diagonal = geo(q, s)
    diagonal_bar = (np.zeros(2), np.array([d_qs, 0.0]))
    points_p, planar_p = _fan(space, p, p_bar, diagonal, diagonal_bar, grid)
    points_r, planar_r = _fan(space, r, r_bar, diagonal, diagonal_bar, grid)
    defect = _isometry_defect(space, points_p + points_r, planar_p + planar_r)
    detected = abs(angle_sum - 2 * math.pi) <= tol and defect <= tol
    return FlatnessReport("quadrilateral", detected, defect,
                          details={"angles": angles, "angle_sum": angle_sum})


def _strip_shear(space, gamma_1, gamma_2, start, end, speed) -> float:
    """Offset along the lines between γ1(t) and γ2(t) in the planar model.

    In a flat strip of width D, d(γ1(t), γ2(t + δ))² = (λδ + h)² + D², so the
    distances at ±δ around the middle of the window determine h.
    """
    if speed == 0:
        return 0.0
    middle, delta = (start + end) / 2, (end - start) / 4
    ahead = space.measure(gamma_1(middle), gamma_2(middle + delta))
    behind = space.measure(gamma_1(middle), gamma_2(middle - delta))
    return (ahead**2 - behind**2) / (4 * speed * delta)


def _detect_strip(space, data, grid, tol) -> FlatnessReport:
    gamma_1, gamma_2, bound = data
    start = max(gamma_1.start, gamma_2.start)
    end = min(gamma_1.end, gamma_2.end)
    if end <= start:
        raise DomainError("The two lines have no common parameter window.")
    params = np.linspace(start, end, grid)
    distances = np.array([space.measure(gamma_1(t), gamma_2(t)) for t in params])
    if distances.max() > bound + tol:
        raise DomainError(f"Lines are {distances.max()} apart at t ="
                          f" {params[int(distances.argmax())]}, beyond the bound {bound}.")
    rung_length = float(distances.mean())
    variation = float(np.abs(distances - rung_length).max())
    speed = space.measure(gamma_1(start), gamma_1(end)) / (end - start)
    shear = _strip_shear(space, gamma_1, gamma_2, start, end, speed)
    width = math.sqrt(max(0.0, rung_length**2 - shear**2))
    points, planar = [], []
    for t in params:
        a, b = gamma_1(t), gamma_2(t)
        a_bar = np.array([speed * (t - start), 0.0])
        if rung_length <= tol:
            points.append(a)
            planar.append(a_bar)
            continue
        b_bar = a_bar + np.array([shear, width])
        rung = space.geodesic_oracle(a, b)
        for s in np.linspace(0, 1, grid):
            points.append(rung(rung.start + s * rung.span))
            planar.append((1 - s) * a_bar + s * b_bar)
    defect = _isometry_defect(space, points, planar)
    logger.debug("Strip of width %s and shear %s: variation %s, defect %s", width, shear,
                 variation, defect)
    detected = variation <= tol and defect <= tol
    return FlatnessReport("strip", detected, defect, strip_width=width,
                          details={"variation": variation, "speed": speed, "shear": shear})


def flatness_detect(space: SpaceHandle, data: Any, mode: str = "triangle", grid: int = 9,
                    scales: Optional[Sequence[float]] = None,
                    tol: float = SAMPLED_TOL) -> FlatnessReport:
    """Detect whether a triangle, quadrilateral or pair of lines bounds a flat region.

    Parameters
    ----------
    space:
        Space with a geodesic oracle.
    data:
        ``"triangle"``: a pair ``(GeodesicTriangle, vertex)`` with vertex one of
        ``"x"``, ``"y"``, ``"z"``. The triangle is flat when the angle at the
        vertex equals its comparison angle.
        ``"quadrilateral"``: four points ``(p, q, r, s)`` in cyclic order whose
        vertex angles add up to at least 2π.
        ``"strip"``: a triple ``(gamma_1, gamma_2, bound)`` of two geodesic lines
        sampled on a common window and a bound on d(gamma_1(t), gamma_2(t)). The lines
        may be parametrized with an offset; the width is measured perpendicular
        to them.
    mode:
        One of ``"triangle"``, ``"quadrilateral"`` or ``"strip"``.
    grid:
        Number of grid points along each direction of the hull.
    scales:
        Scales for the angle estimates.
    tol:
        Tolerance for angles, distance variation and isometry defect.

    Returns
    -------
        Flatness report; ``detected`` implies an isometry defect within tol.

    Raises
    ------
    DomainError
        If the data do not satisfy the preconditions of the mode.
    """
    if mode not in FLATNESS_MODES:
        raise ValueError(f"Unknown mode '{mode}', use one of {FLATNESS_MODES}.")
    if space.geodesic_oracle is None:
        raise UnsupportedCapabilityError(f"Space '{space.kind}' has no geodesic oracle.")
    if mode == "triangle":
        return _detect_triangle(space, data, grid, scales, tol)
    if mode == "quadrilateral":
        return _detect_quadrilateral(space, data, grid, scales, tol)
    return _detect_strip(space, data, grid, tol)
