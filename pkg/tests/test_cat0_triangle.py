import math

import numpy as np
from pytest import fixture, mark, raises

from metricat.cat0 import cat0_triangle_check, equivalent_condition_check, gluing_check
from metricat.cat0.triangle import MODES
from metricat.comparison import GeodesicTriangle, comparison_point
from metricat.errors import DomainError
from metricat.provider import make_space
from metricat.spaces import MetricTreeSpace
from metricat.verdict import Status

SHORT_SCALES = (0.25, 0.125, 0.0625)


@fixture
def arc_triangle():
    arc = make_space({"kind": "circle", "metric": "arc"})
    third = 2 * math.pi / 3
    return arc, GeodesicTriangle.from_space(arc, 0.0, third, 2 * third)


def test_euclidean_triangles_pass():
    plane = make_space("euclidean")
    points = plane.sample(11, 600)
    for x, y, z in zip(*[iter(points)] * 3):
        verdict = cat0_triangle_check(plane, GeodesicTriangle.from_space(plane, x, y, z))
        assert verdict.passed
        assert verdict.details["cases"] == math.comb(27, 2)
        assert abs(verdict.worst_violation) < 1e-9


def test_euclidean_space_triangles_pass():
    space = make_space({"kind": "euclidean", "n": 3})
    triangle = GeodesicTriangle.from_space(space, *space.sample(0, 3))
    assert cat0_triangle_check(space, triangle).passed


def test_tree_triangles_pass():
    tree = MetricTreeSpace.random_tree(12, seed=4)
    space = tree.handle()
    for seed in range(5):
        triangle = GeodesicTriangle.from_space(space, *space.sample(seed, 3))
        assert cat0_triangle_check(space, triangle, grid=7).passed


def test_circle_triangle_fails(arc_triangle):
    arc, triangle = arc_triangle
    verdict = cat0_triangle_check(arc, triangle)
    assert verdict.status == Status.FAIL
    assert verdict.worst_violation >= math.pi / 3 - 1e-9
    assert len(verdict.witness) == 10
    worst = verdict.witness[0]
    assert worst["violation"] == verdict.worst_violation
    assert math.isclose(arc.measure(worst["p"], worst["q"]) - worst["violation"],
                        float(np.linalg.norm(
                            np.subtract(*_comparison_points(arc, triangle, worst)))),
                        abs_tol=1e-9)


def _comparison_points(space, triangle, case):
    comp = triangle.comparison(space)
    return [comparison_point(comp, side, fraction * comp.side_length(side))
            for side, fraction in zip(case["sides"], case["fractions"])]


@mark.parametrize("mode", MODES)
def test_equivalent_conditions_circle(arc_triangle, mode):
    arc, triangle = arc_triangle
    verdict = equivalent_condition_check(arc, triangle, mode, scales=SHORT_SCALES)
    assert verdict.status == Status.FAIL
    assert verdict.details["mode"] == mode


@mark.parametrize("mode", MODES)
def test_equivalent_conditions_tree(mode):
    tree = MetricTreeSpace.tripod()
    space = tree.handle()
    triangle = GeodesicTriangle.from_space(space, tree.vertex("a"), tree.vertex("b"),
                                           tree.vertex("c"))
    assert equivalent_condition_check(space, triangle, mode, scales=SHORT_SCALES).passed


def test_equivalent_conditions_euclidean():
    plane = make_space("euclidean")
    triangle = GeodesicTriangle.from_space(plane, np.zeros(2), np.array([4.0, 0.0]),
                                           np.array([1.0, 3.0]))
    for mode in MODES:
        assert equivalent_condition_check(plane, triangle, mode, scales=SHORT_SCALES).passed
    with raises(ValueError):
        equivalent_condition_check(plane, triangle, "unknown")


def test_alexandrov_angle_witness(arc_triangle):
    arc, triangle = arc_triangle
    verdict = equivalent_condition_check(arc, triangle, "alexandrov-angle", scales=SHORT_SCALES)
    worst = verdict.witness[0]
    assert math.isclose(worst["angle"], math.pi, abs_tol=1e-6)
    assert math.isclose(worst["comparison_angle"], math.pi / 3)


def test_gluing_check():
    plane = make_space("euclidean")
    p, q_1, q_2 = np.array([0.0, 2.0]), np.array([-1.0, 0.0]), np.array([3.0, 0.0])
    verdict = gluing_check(plane, p, q_1, q_2, np.array([1.0, 0.0]))
    assert verdict.passed
    assert verdict.details["parts"] == ["PASS", "PASS"]
    assert verdict.details["whole"] == "PASS"

    at_end = gluing_check(plane, p, q_1, q_2, q_1)
    assert at_end.passed and at_end.details["short_circuit"]

    with raises(DomainError):
        gluing_check(plane, p, q_1, q_2, np.array([1.0, 1.0]))


def test_gluing_check_tree():
    tree = MetricTreeSpace.tripod()
    space = tree.handle()
    a, b, c = (tree.vertex(label) for label in "abc")
    assert gluing_check(space, c, a, b, tree.vertex("o")).passed
    assert gluing_check(space, c, a, b, space.midpoint_oracle(a, tree.vertex("o"), 0.0)).passed
