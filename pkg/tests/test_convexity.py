import math

import numpy as np
from pytest import mark, raises

from metricat.cat0 import (
    approx_midpoint_bound,
    approx_midpoint_closeness_check,
    approx_midpoint_delta,
    busemann_midpoint_check,
    convexity_check,
)
from metricat.errors import DomainError
from metricat.provider import make_space
from metricat.spaces import MetricTreeSpace
from metricat.verdict import Status

THIRD = 2 * math.pi / 3


def test_convexity_euclidean():
    plane = make_space("euclidean")
    gamma_1 = plane.geodesic_oracle(np.zeros(2), np.array([1.0, 0.0]))
    gamma_2 = plane.geodesic_oracle(np.array([0.0, 1.0]), np.array([2.0, 3.0]))
    verdict = convexity_check(plane, gamma_1, gamma_2)
    assert verdict.passed
    assert verdict.details["cases"] == 17


def test_convexity_tree():
    tree = MetricTreeSpace.random_tree(10, seed=2)
    space = tree.handle()
    a, b, c, d = space.sample(5, 4)
    assert convexity_check(space, space.geodesic_oracle(a, b), space.geodesic_oracle(c, d)).passed
    assert convexity_check(space, space.geodesic_oracle(a, b), space.geodesic_oracle(a, d)).passed


def test_convexity_random_trees():
    rng = np.random.default_rng(7)
    trees = [MetricTreeSpace.tripod()] + [
        MetricTreeSpace.random_tree(int(rng.integers(1, 65)), seed=seed) for seed in range(50)]
    for i_tree, tree in enumerate(trees):
        space = tree.handle()
        points = space.sample(i_tree, 400)
        for a, b, c, d in zip(*[iter(points)] * 4):
            verdict = convexity_check(space, space.geodesic_oracle(a, b),
                                      space.geodesic_oracle(c, d))
            assert verdict.passed, verdict.witness


def test_convexity_circle_fails():
    arc = make_space({"kind": "circle", "metric": "arc"})
    gamma_1 = arc.geodesic_oracle(0.0, THIRD)
    gamma_2 = arc.geodesic_oracle(0.0, 2 * THIRD)
    verdict = convexity_check(arc, gamma_1, gamma_2)
    assert verdict.status == Status.FAIL
    # d(γ1(t), γ2(t)) = 4πt/3 until the two points are antipodal at t = 3/4.
    assert math.isclose(verdict.worst_violation, math.pi / 2)
    assert verdict.witness[0]["t"] == 0.75


@mark.parametrize(
    "space_dict,points,status",
    [
        ({"kind": "euclidean"}, ([0.0, 0.0], [2.0, 1.0], [-1.0, 3.0]), Status.PASS),
        ({"kind": "circle", "metric": "arc"}, (0.0, THIRD, 2 * THIRD), Status.FAIL),
        ({"kind": "circle", "metric": "arc"}, (0.0, 0.5, 1.0), Status.PASS),
        ({"kind": "circle", "metric": "chord"}, (0.0, 0.5, 1.0), Status.SKIPPED),
    ]
)
def test_busemann_midpoint(space_dict, points, status):
    space = make_space(space_dict)
    if space_dict["kind"] == "euclidean":
        points = [np.array(p) for p in points]
    assert busemann_midpoint_check(space, *points).status == status


def test_approx_midpoint_formulas():
    assert math.isclose(approx_midpoint_bound(0.5, 2.0), math.sqrt(1.25))
    assert approx_midpoint_bound(0.0, 2.0) == 0.0
    assert math.isclose(approx_midpoint_delta(1.0, 2.0), math.sqrt(2) - 1)
    for epsilon in (1e-8, 1e-3, 0.5, 4.0):
        delta = approx_midpoint_delta(epsilon, 3.0)
        assert math.isclose(approx_midpoint_bound(delta, 3.0), epsilon)
    with raises(DomainError):
        approx_midpoint_bound(-0.1, 1.0)
    with raises(DomainError):
        approx_midpoint_delta(0.0, 1.0)
    with raises(DomainError):
        approx_midpoint_delta(1.0, -1.0)


def test_approx_midpoint_closeness_euclidean():
    plane = make_space("euclidean")
    x, y = np.array([-1.0, 0.0]), np.array([1.0, 0.0])
    verdict = approx_midpoint_closeness_check(plane, x, y, 0.5, trials=10000)
    assert verdict.passed
    bound = math.sqrt(1.25)
    assert math.isclose(verdict.details["bound"], bound)
    assert bound - 1e-2 < verdict.details["max_distance"] <= bound + 1e-9

    exact = approx_midpoint_closeness_check(plane, x, y, 0.0, trials=50)
    assert exact.passed and exact.details["max_distance"] == 0.0

    looser = approx_midpoint_closeness_check(plane, x, y, 0.5, trials=100, length=4.0)
    assert looser.details["bound"] == approx_midpoint_bound(0.5, 4.0)


def test_approx_midpoint_closeness_tree():
    tree = MetricTreeSpace.tripod()
    verdict = approx_midpoint_closeness_check(tree.handle(), tree.vertex("a"), tree.vertex("b"),
                                              0.1, trials=500)
    assert verdict.passed
    # The δ-midpoints of two leaves are the points within δ of the center.
    assert math.isclose(verdict.details["max_distance"], 0.1, abs_tol=1e-9)
    assert verdict.details["bound"] > 0.1


def test_approx_midpoint_closeness_errors():
    plane = make_space("euclidean")
    x, y = np.array([-1.0, 0.0]), np.array([1.0, 0.0])
    with raises(DomainError):
        approx_midpoint_closeness_check(plane, x, y, -0.5)
    with raises(DomainError):
        approx_midpoint_closeness_check(plane, x, y, 0.5, length=1.0)
    chord = make_space({"kind": "circle", "metric": "chord"})
    verdict = approx_midpoint_closeness_check(chord, 0.0, 1.0, 0.1)
    assert verdict.status == Status.SKIPPED
    assert "midpoint oracle" in verdict.details["reason"]
