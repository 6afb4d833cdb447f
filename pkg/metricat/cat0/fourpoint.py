"""The four-point condition.

Four points x1, x2, y1, y2 have a subembedding in the plane when there are
planar points with the same four distances |x̄i - ȳj| = d(xi, yj) and with
|x̄1 - x̄2| >= d(x1, x2) and |ȳ1 - ȳ2| >= d(y1, y2). Every labelled quadruple of
a CAT(0) space has one.

The construction glues the comparison triangles of (x1, x2, y1) and
(x1, x2, y2) along [x̄1, x̄2], on opposite sides. If the resulting
quadrilateral is not convex, the reflex vertex is straightened: ỹ1, x̃i, ỹ2
are put on a line and the other x̃ is placed by its distances to ỹ1 and ỹ2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from metricat.comparison import build_comparison_triangle
from metricat.errors import NotEmbeddableError
from metricat.handle import SpaceHandle
from metricat.verdict import EXACT_TOL, CheckVerdict, VerdictBuilder

logger = logging.getLogger(__name__)

PAIRINGS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))
"""Index orders (x1, x2, y1, y2) of the three ways to split a quadruple in two pairs."""


@dataclass(frozen=True)
class Subembedding():
    """Planar realization of the four-point condition, or why it failed.

    Parameters
    ----------
    planar_points:
        Planar points (x̄1, x̄2, ȳ1, ȳ2), absent when refuted.
    satisfied:
        Whether the points realize the condition.
    slack:
        (|x̄1 - x̄2| - d(x1, x2), |ȳ1 - ȳ2| - d(y1, y2)) of the construction.
    refutation:
        Certificate describing the failed construction.
    """

    planar_points: Optional[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]
    satisfied: bool
    slack: tuple[float, float]
    refutation: Optional[dict] = None


def _glued(d11, d12, d21, d22, dx, tol):
    x_1 = np.zeros(2)
    if dx <= tol:
        # Coincident x-points: both triangles degenerate to segments from the origin.
        build_comparison_triangle(dx, d11, d21, tol)
        build_comparison_triangle(dx, d12, d22, tol)
        return x_1, x_1.copy(), np.array([d11, 0.0]), np.array([-d12, 0.0])
    y_1 = build_comparison_triangle(dx, d11, d21, tol).vertices[2]
    y_2 = build_comparison_triangle(dx, d12, d22, tol).vertices[2] * np.array([1.0, -1.0])
    return x_1, np.array([dx, 0.0]), y_1, y_2


def _straightened(d_inner_1, d_inner_2, d_outer_1, d_outer_2, tol):
    """Put ỹ1, x̃_inner, ỹ2 on a line; place x̃_outer by its distances to ỹ1 and ỹ2."""
    y_1 = np.zeros(2)
    y_2 = np.array([d_inner_1 + d_inner_2, 0.0])
    x_inner = np.array([d_inner_1, 0.0])
    x_outer = build_comparison_triangle(d_inner_1 + d_inner_2, d_outer_1, d_outer_2,
                                        tol).vertices[2]
    return x_inner, x_outer, y_1, y_2


def _straightened_at_x2(d11, d12, d21, d22, tol):
    x_2, x_1, y_1, y_2 = _straightened(d21, d22, d11, d12, tol)
    return x_1, x_2, y_1, y_2


def _reflex_vertex(x_2, y_1, y_2, tol) -> Optional[int]:
    """Index of the x-vertex where the glued quadrilateral is not convex, if any."""
    height = y_1[1] - y_2[1]
    if height <= tol:
        return None
    crossing = y_1[0] + (y_2[0] - y_1[0]) * y_1[1] / height
    if crossing < -tol:
        return 0
    if crossing > x_2[0] + tol:
        return 1
    return None


def _deficit(points, d11, d12, d21, d22, dx, dy):
    x_1, x_2, y_1, y_2 = points
    errors = [abs(float(np.linalg.norm(x_1 - y_1)) - d11),
              abs(float(np.linalg.norm(x_1 - y_2)) - d12),
              abs(float(np.linalg.norm(x_2 - y_1)) - d21),
              abs(float(np.linalg.norm(x_2 - y_2)) - d22)]
    slack = (float(np.linalg.norm(x_1 - x_2)) - dx, float(np.linalg.norm(y_1 - y_2)) - dy)
    return max(max(errors), -slack[0], -slack[1]), slack


def find_subembedding(d11: float, d12: float, d21: float, d22: float, dx: float, dy: float,
                      tol: float = EXACT_TOL) -> Subembedding:
    """Search a planar subembedding for four points given by their distances.

    Parameters
    ----------
    d11:
        d(x1, y1).
    d12:
        d(x1, y2).
    d21:
        d(x2, y1).
    d22:
        d(x2, y2).
    dx:
        d(x1, x2).
    dy:
        d(y1, y2).
    tol:
        Tolerance, relative to the largest distance (at least 1).

    Returns
    -------
        Satisfied subembedding with its planar points, or a refutation.

    Raises
    ------
    NotEmbeddableError
        If the triangle (x1, x2, y1) or (x1, x2, y2) has no planar realization.
    """
    values = (d11, d12, d21, d22, dx, dy)
    if min(values) < 0:
        raise ValueError(f"Distances should be nonnegative, got {values}.")
    scaled_tol = tol * max(1.0, *values)
    glued = _glued(d11, d12, d21, d22, dx, scaled_tol)
    reflex = _reflex_vertex(glued[1], glued[2], glued[3], scaled_tol)
    constructions = {
        "glued": lambda: glued,
        "straightened at x1": lambda: _straightened(d11, d12, d21, d22, scaled_tol),
        "straightened at x2": lambda: _straightened_at_x2(d11, d12, d21, d22, scaled_tol),
    }
    planned = {None: "glued", 0: "straightened at x1", 1: "straightened at x2"}[reflex]
    order = [planned] + [name for name in constructions if name != planned]
    first_failure: Optional[dict] = None
    for name in order:
        try:
            points = constructions[name]()
        except NotEmbeddableError as error:
            if first_failure is None:
                first_failure = {"construction": name, "reason": str(error),
                                 "deficit": _straightening_excess(name, values),
                                 "slack": [float("nan"), float("nan")]}
            continue
        deficit, slack = _deficit(points, *values)
        if deficit <= scaled_tol:
            return Subembedding(points, True, slack)
        if first_failure is None:
            first_failure = {"construction": name, "reason": "planar distances do not dominate",
                             "deficit": deficit, "slack": list(slack),
                             "planar_points": [p.tolist() for p in points]}
    assert first_failure is not None
    slack_out = tuple(first_failure["slack"])
    return Subembedding(None, False, slack_out, first_failure)  # type: ignore[arg-type]


def _straightening_excess(name, values):
    d11, d12, d21, d22, _, _ = values
    if name == "straightened at x1":
        return d11 + d12 - d21 - d22
    return d21 + d22 - d11 - d12


def four_point_scan(space: SpaceHandle, seed: int = 0, count: int = 1000,
                    tol: float = EXACT_TOL) -> CheckVerdict:
    """Test the four-point condition on random quadruples.

    Every quadruple is tested in its three pairings (12|34), (13|24) and (14|23).

    Parameters
    ----------
    space:
        Space with a sampler.
    seed:
        Seed for the sampler.
    count:
        Number of quadruples.
    tol:
        Relative tolerance of the subembedding search.

    Returns
    -------
        PASS if every pairing of every quadruple has a subembedding; FAIL lists
        quadruples with the pairing and the refutation.
    """
    if not space.has_sampler:
        return CheckVerdict.skipped(f"Space '{space.kind}' has no sampler.")
    points = space.sample(seed, 4 * count)
    builder = VerdictBuilder(tol)
    for i_quad in range(count):
        quad = points[4 * i_quad:4 * i_quad + 4]
        dist = np.zeros((4, 4))
        for i in range(4):
            for j in range(i + 1, 4):
                dist[i, j] = dist[j, i] = space.measure(quad[i], quad[j])
        scale = max(1.0, float(dist.max()))
        for i_x1, i_x2, i_y1, i_y2 in PAIRINGS:
            result = find_subembedding(dist[i_x1, i_y1], dist[i_x1, i_y2], dist[i_x2, i_y1],
                                       dist[i_x2, i_y2], dist[i_x1, i_x2], dist[i_y1, i_y2], tol)
            if result.satisfied:
                builder.record(-min(result.slack) / scale)
            else:
                certificate = result.refutation or {}
                builder.record(max(certificate.get("deficit", 0.0) / scale, 2 * tol),
                               quadruple=[quad[i] for i in (i_x1, i_x2, i_y1, i_y2)],
                               pairing=[i_x1, i_x2, i_y1, i_y2], refutation=certificate)
    return builder.build(quadruples=count)
