import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from metricat.cat0 import ConvexSet, find_subembedding, project_to_convex
from metricat.comparison import build_comparison_triangle, comparison_angle
from metricat.provider import make_space

lengths = st.floats(min_value=0.1, max_value=10.0)
fractions = st.floats(min_value=0.0, max_value=1.0)
coordinates = st.floats(min_value=-5.0, max_value=5.0)


@given(lengths, lengths, fractions)
def test_comparison_triangle_sides(a, b, fraction):
    c = abs(a - b) + fraction * (a + b - abs(a - b))
    tri = build_comparison_triangle(a, b, c)
    x_bar, y_bar, z_bar = tri.vertices
    scale = a + b
    assert math.isclose(np.linalg.norm(y_bar - x_bar), a, abs_tol=1e-9 * scale)
    assert math.isclose(np.linalg.norm(z_bar - x_bar), b, abs_tol=1e-9 * scale)
    assert math.isclose(np.linalg.norm(z_bar - y_bar), c, abs_tol=1e-6 * scale)


@given(lengths, lengths, fractions)
def test_comparison_angle_range(a, b, fraction):
    c = abs(a - b) + fraction * (a + b - abs(a - b))
    angle = comparison_angle(a, b, c)
    assert 0.0 <= angle <= math.pi
    assert math.isclose(c * c, a * a + b * b - 2 * a * b * math.cos(angle),
                        abs_tol=1e-9 * (a + b)**2)


@settings(max_examples=200)
@given(st.lists(st.tuples(coordinates, coordinates), min_size=4, max_size=4))
def test_planar_points_have_subembedding(coords):
    x_1, x_2, y_1, y_2 = (np.array(point) for point in coords)

    def dist(p, q):
        return float(np.linalg.norm(p - q))

    values = (dist(x_1, y_1), dist(x_1, y_2), dist(x_2, y_1), dist(x_2, y_2), dist(x_1, x_2),
              dist(y_1, y_2))
    result = find_subembedding(*values, tol=1e-6)
    assert result.satisfied
    scale = max(1.0, *values)
    bar_x1, bar_x2, bar_y1, bar_y2 = result.planar_points
    assert math.isclose(dist(bar_x1, bar_y1), dist(x_1, y_1), abs_tol=1e-6 * scale)
    assert math.isclose(dist(bar_x2, bar_y2), dist(x_2, y_2), abs_tol=1e-6 * scale)
    assert dist(bar_x1, bar_x2) >= dist(x_1, x_2) - 1e-6 * scale
    assert dist(bar_y1, bar_y2) >= dist(y_1, y_2) - 1e-6 * scale


@settings(max_examples=100, deadline=None)
@given(st.tuples(coordinates, coordinates), st.tuples(coordinates, coordinates),
       st.tuples(coordinates, coordinates))
def test_projection_idempotent(start, end, x):
    plane = make_space("euclidean")
    segment = ConvexSet.segment(plane, np.array(start), np.array(end))
    nearest = project_to_convex(plane, segment, np.array(x)).point
    again = project_to_convex(plane, segment, nearest)
    assert again.distance <= 1e-6
    assert np.linalg.norm(again.point - nearest) <= 1e-6
    assert segment.contains(nearest)
