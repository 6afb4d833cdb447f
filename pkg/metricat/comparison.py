"""Comparison triangles and angles in the Euclidean plane.

A triangle with side lengths d(x, y), d(x, z), d(y, z) is drawn in the plane
with x̄ at the origin, ȳ on the positive first axis and z̄ in the upper
half-plane. Points on the sides and angles at the vertices of geodesic triangles
are compared with their counterparts in this planar triangle.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from metricat.curve import Curve
from metricat.errors import DomainError, NotEmbeddableError, UndefinedAngleError
from metricat.handle import SpaceHandle, space_geodesic
from metricat.verdict import EXACT_TOL, SAMPLED_TOL, CheckVerdict, VerdictBuilder

logger = logging.getLogger(__name__)

DEFAULT_SCALES = tuple(2.0**-k for k in range(1, 21))
"""Scales ε at which the comparison angles are maximized."""
DEFAULT_ANGLE_GRID = 16

SIDES = {"xy": (0, 1), "xz": (0, 2), "yz": (1, 2), "yx": (1, 0), "zx": (2, 0), "zy": (2, 1)}


@dataclass(frozen=True)
class ComparisonTriangle():
    """Planar triangle with prescribed side lengths in canonical position.

    Parameters
    ----------
    vertices:
        Planar points x̄, ȳ, z̄ as arrays of shape (2,).
    source_sides:
        The side lengths (d(x, y), d(x, z), d(y, z)).
    """

    vertices: tuple[np.ndarray, np.ndarray, np.ndarray]
    source_sides: tuple[float, float, float]

    def side_length(self, side: str) -> float:
        """Length of a side, named by its two vertices, e.g. ``"yz"``."""
        first, second = _side_index(side)
        return float(np.linalg.norm(self.vertices[second] - self.vertices[first]))

    def angle(self, vertex: str) -> float:
        """Interior angle at a vertex (``"x"``, ``"y"`` or ``"z"``)."""
        d_xy, d_xz, d_yz = self.source_sides
        if vertex == "x":
            return comparison_angle(d_xy, d_xz, d_yz)
        if vertex == "y":
            return comparison_angle(d_xy, d_yz, d_xz)
        if vertex == "z":
            return comparison_angle(d_xz, d_yz, d_xy)
        raise ValueError(f"Unknown vertex '{vertex}', use 'x', 'y' or 'z'.")


def _side_index(side: str) -> tuple[int, int]:
    try:
        return SIDES[side]
    except KeyError as err:
        raise ValueError(f"Unknown side '{side}', use one of {list(SIDES)}.") from err


def build_comparison_triangle(a: float, b: float, c: float,
                              tol: float = EXACT_TOL) -> ComparisonTriangle:
    """Draw a planar triangle with side lengths a = |x̄ȳ|, b = |x̄z̄|, c = |ȳz̄|.

    Parameters
    ----------
    a:
        Length of the side from x̄ to ȳ.
    b:
        Length of the side from x̄ to z̄.
    c:
        Length of the side from ȳ to z̄.
    tol:
        Allowed violation of the triangle inequalities, relative to the longest side.

    Returns
    -------
        Triangle with x̄ = (0, 0), ȳ = (a, 0) and z̄ in the closed upper half-plane.

    Raises
    ------
    NotEmbeddableError
        If a triangle inequality is violated beyond the tolerance.
    """
    a, b, c = float(a), float(b), float(c)
    if min(a, b, c) < 0:
        raise NotEmbeddableError(f"Side lengths should be nonnegative, got ({a}, {b}, {c}).")
    slack = tol * max(1.0, a, b, c)
    if a > b + c + slack or b > a + c + slack or c > a + b + slack:
        raise NotEmbeddableError(f"Side lengths ({a}, {b}, {c}) violate the triangle inequality.")
    if a == 0:
        z_bar = np.array([b, 0.0])
    else:
        u = (a * a + b * b - c * c) / (2 * a)
        z_bar = np.array([u, math.sqrt(max(b * b - u * u, 0.0))])
    return ComparisonTriangle((np.zeros(2), np.array([a, 0.0]), z_bar), (a, b, c))


def comparison_point(tri: ComparisonTriangle, side: str, arc_distance: float,
                     tol: float = EXACT_TOL) -> np.ndarray:
    """Point on a side of a comparison triangle.

    Parameters
    ----------
    tri:
        Comparison triangle.
    side:
        Side named by its vertices, starting with the vertex to measure from.
    arc_distance:
        Distance from the first vertex of the side.
    tol:
        Allowed overshoot of the side length.

    Returns
    -------
        The planar point at that distance.

    Raises
    ------
    DomainError
        If the distance is negative or longer than the side.
    """
    first, second = _side_index(side)
    start, end = tri.vertices[first], tri.vertices[second]
    length = float(np.linalg.norm(end - start))
    if arc_distance < -tol or arc_distance > length + tol * max(1.0, length):
        raise DomainError(f"Distance {arc_distance} is outside the side {side} of length"
                          f" {length}.")
    if length == 0:
        return start.copy()
    fraction = min(max(arc_distance / length, 0.0), 1.0)
    return start + fraction * (end - start)


def comparison_angle(a: float, b: float, c: float) -> float:
    """Angle between the sides a and b of a planar triangle with opposite side c.

    Parameters
    ----------
    a:
        First adjacent side, positive.
    b:
        Second adjacent side, positive.
    c:
        Opposite side.

    Returns
    -------
        The angle in [0, π] from the law of cosines.

    Raises
    ------
    UndefinedAngleError
        If an adjacent side has length 0.
    """
    if a <= 0 or b <= 0:
        raise UndefinedAngleError(f"Angle undefined for adjacent sides of length {a} and {b}.")
    cosine = (a * a + b * b - c * c) / (2 * a * b)
    return math.acos(min(1.0, max(-1.0, cosine)))


@dataclass(frozen=True)
class AngleEstimate():
    """Scale-limited estimate of the Alexandrov angle between two curves.

    Parameters
    ----------
    value:
        Estimate of the angle, the supremum at the smallest scale.
    scales_used:
        The scales ε, decreasing.
    per_scale_sup:
        Supremum of the comparison angles at each scale.
    certified_upper:
        Whether the suprema decrease monotonically and have stabilized.
    """

    value: float
    scales_used: tuple[float, ...]
    per_scale_sup: tuple[float, ...]
    certified_upper: bool


def alexandrov_angle_estimate(space: SpaceHandle, curve_1: Curve, curve_2: Curve,
                              scales: Optional[Sequence[float]] = None,
                              grid: int = DEFAULT_ANGLE_GRID,
                              tol: float = SAMPLED_TOL) -> AngleEstimate:
    """Estimate the Alexandrov angle between two curves leaving the same point.

    For every scale ε the comparison angle at p = γ1(0) is maximized over the
    grid of parameters t, t' in {ε k / grid : k = 1..grid}.

    Parameters
    ----------
    space:
        Space that the curves live in.
    curve_1:
        First curve, starting at p.
    curve_2:
        Second curve, starting at p.
    scales:
        Decreasing positive scales, in parameter units from the curve start.
    grid:
        Number of parameters per curve and scale.
    tol:
        Tolerance for the stabilization of the suprema.

    Returns
    -------
        Angle estimate.

    Raises
    ------
    DomainError
        If a scale exceeds the domain of a curve.
    UndefinedAngleError
        If one of the curves stays at p for every grid parameter.
    """
    if scales is None:
        scales = DEFAULT_SCALES
    scales = tuple(float(s) for s in scales)
    if any(s <= 0 for s in scales) or any(s1 <= s2 for s1, s2 in zip(scales[:-1], scales[1:])):
        raise ValueError("Scales should be a strictly decreasing sequence of positive numbers.")
    if scales[0] > min(curve_1.span, curve_2.span) + 1e-12:
        raise DomainError(f"Scale {scales[0]} exceeds the domain of one of the curves.")
    apex = curve_1(curve_1.start)
    sups = []
    for scale in scales:
        fractions = scale * np.arange(1, grid + 1) / grid
        points_1 = [curve_1(curve_1.start + t) for t in fractions]
        points_2 = [curve_2(curve_2.start + t) for t in fractions]
        dist_1 = [space.measure(apex, p) for p in points_1]
        dist_2 = [space.measure(apex, q) for q in points_2]
        best = -1.0
        for p, d_1 in zip(points_1, dist_1):
            if d_1 <= 0:
                continue
            for q, d_2 in zip(points_2, dist_2):
                if d_2 <= 0:
                    continue
                best = max(best, comparison_angle(d_1, d_2, space.measure(p, q)))
        if best < 0:
            raise UndefinedAngleError(f"Curves do not leave the common point at scale {scale}.")
        sups.append(best)
    monotone = all(s2 <= s1 + tol for s1, s2 in zip(sups[:-1], sups[1:]))
    stable = len(sups) < 2 or abs(sups[-1] - sups[-2]) <= tol
    return AngleEstimate(sups[-1], scales, tuple(sups), monotone and stable)


@dataclass(frozen=True)
class GeodesicTriangle():
    """Three points with geodesic sides.

    Parameters
    ----------
    x:
        First vertex.
    y:
        Second vertex.
    z:
        Third vertex.
    side_xy:
        Curve from x to y.
    side_xz:
        Curve from x to z.
    side_yz:
        Curve from y to z.
    """

    x: Any
    y: Any
    z: Any
    side_xy: Curve
    side_xz: Curve
    side_yz: Curve

    @classmethod
    def from_space(cls, space: SpaceHandle, x: Any, y: Any, z: Any) -> GeodesicTriangle:
        """Create the triangle with sides from the geodesic oracle."""
        return cls(x, y, z, space_geodesic(space, x, y), space_geodesic(space, x, z),
                   space_geodesic(space, y, z))

    @property
    def vertices(self) -> tuple[Any, Any, Any]:
        """The three vertices."""
        return self.x, self.y, self.z

    def side(self, name: str) -> Curve:
        """Side curve by name, e.g. ``"zy"`` is the side from z to y."""
        curves = {"xy": self.side_xy, "xz": self.side_xz, "yz": self.side_yz}
        if name in curves:
            return curves[name]
        if name[::-1] in curves:
            return curves[name[::-1]].reverse()
        raise ValueError(f"Unknown side '{name}'.")

    def sides_at(self, vertex: str) -> tuple[Curve, Curve]:
        """The two sides leaving a vertex."""
        others = [v for v in "xyz" if v != vertex]
        if len(others) != 2:
            raise ValueError(f"Unknown vertex '{vertex}', use 'x', 'y' or 'z'.")
        return self.side(vertex + others[0]), self.side(vertex + others[1])

    def comparison(self, space: SpaceHandle, tol: float = EXACT_TOL) -> ComparisonTriangle:
        """Comparison triangle for the side lengths of this triangle."""
        return build_comparison_triangle(space.measure(self.x, self.y),
                                         space.measure(self.x, self.z),
                                         space.measure(self.y, self.z), tol)


def vertex_angles(space: SpaceHandle, triangle: GeodesicTriangle,
                  scales: Optional[Sequence[float]] = None,
                  grid: int = DEFAULT_ANGLE_GRID) -> dict[str, AngleEstimate]:
    """Alexandrov angle estimates at the three vertices of a triangle."""
    return {vertex: alexandrov_angle_estimate(space, *triangle.sides_at(vertex), scales=scales,
                                              grid=grid)
            for vertex in "xyz"}


def angular_excess(space: SpaceHandle, triangle: GeodesicTriangle,
                   scales: Optional[Sequence[float]] = None,
                   grid: int = DEFAULT_ANGLE_GRID) -> float:
    """Sum of the three vertex angles of a geodesic triangle minus π."""
    angles = vertex_angles(space, triangle, scales, grid)
    return sum(angle.value for angle in angles.values()) - math.pi


def _sign(value: float, tol: float) -> int:
    if value > tol:
        return 1
    if value < -tol:
        return -1
    return 0


def alexandrov_lemma_signs(dpx: float, dpy: float, dpz: float, dxz: float, dzy: float,
                           tol: float = EXACT_TOL) -> tuple[int, int]:
    """Signs of the two quantities that are compared in Alexandrov's lemma.

    For a triangle (p, x, y) with z on the side [x, y]:

    - the first sign is that of ∠̄_x(p, y) - ∠̄_x(p, z),
    - the second sign is that of ∠̄_z(p, x) + ∠̄_z(p, y) - π.

    The lemma states that both signs are equal.

    Parameters
    ----------
    dpx:
        d(p, x).
    dpy:
        d(p, y).
    dpz:
        d(p, z).
    dxz:
        d(x, z).
    dzy:
        d(z, y); d(x, y) is dxz + dzy.
    tol:
        Values within tol of zero have sign 0.

    Returns
    -------
        The two signs, each -1, 0 or 1.

    Raises
    ------
    NotEmbeddableError
        If one of the triangles (p, x, y), (p, x, z) and (p, z, y) has no
        planar realization.
    """
    dxy = dxz + dzy
    for sides in ((dpx, dxy, dpy), (dpx, dxz, dpz), (dpz, dzy, dpy)):
        build_comparison_triangle(*sides, tol=tol)
    first = comparison_angle(dpx, dxy, dpy) - comparison_angle(dpx, dxz, dpz)
    second = comparison_angle(dpz, dxz, dpx) + comparison_angle(dpz, dzy, dpy) - math.pi
    return _sign(first, tol), _sign(second, tol)


def angle_pseudometric_check(space: SpaceHandle, curves: Sequence[Curve],
                             scales: Optional[Sequence[float]] = None,
                             tol: float = SAMPLED_TOL,
                             grid: int = DEFAULT_ANGLE_GRID) -> CheckVerdict:
    """Check the triangle inequality for Alexandrov angles of three curves.

    Parameters
    ----------
    space:
        Space that the curves live in.
    curves:
        Three curves leaving a common point.
    scales:
        Scales for the angle estimates.
    tol:
        Tolerance on the inequality.
    grid:
        Grid size for the angle estimates.

    Returns
    -------
        PASS when ∠(γ1, γ2) <= ∠(γ1, γ3) + ∠(γ3, γ2) and its two permutations hold.
    """
    if len(curves) != 3:
        raise ValueError(f"Expected three curves, got {len(curves)}.")
    apex = curves[0](curves[0].start)
    for curve in curves[1:]:
        if space.measure(apex, curve(curve.start)) > EXACT_TOL:
            raise DomainError("The curves do not start at the same point.")
    angles = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        angles[i, j] = angles[j, i] = alexandrov_angle_estimate(
            space, curves[i], curves[j], scales, grid).value
    builder = VerdictBuilder(tol)
    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        builder.record(angles[i, j] - angles[i, k] - angles[k, j],
                       angles={f"{i + 1}{j + 1}": angles[i, j], f"{i + 1}{k + 1}": angles[i, k],
                               f"{k + 1}{j + 1}": angles[k, j]})
    return builder.build()
