import math

import numpy as np
from pytest import mark, raises

from metricat.curve import Curve
from metricat.errors import (
    DegenerateCurveError,
    IncompleteSpaceError,
    MidpointNotFoundError,
    NoConvergenceError,
    UnsupportedCapabilityError,
)
from metricat.geodesic import (
    dyadic_geodesic,
    find_epsilon_midpoint,
    is_geodesic,
    local_geodesic_check,
    midpoint_defect,
    midpoint_limit,
    unique_geodesic_check,
    unit_reparametrize,
)
from metricat.handle import SpaceHandle
from metricat.provider import make_space
from metricat.spaces import MetricTreeSpace
from metricat.verdict import Status


def _long_arc():
    """Counterclockwise arc of three quarters of the unit circle, starting at 0."""
    return Curve(lambda t: (1.5 * math.pi * t) % (2 * math.pi))


def test_is_geodesic_segment():
    plane = make_space("euclidean")
    segment = plane.geodesic_oracle(np.zeros(2), np.array([3.0, 4.0]))
    witness = is_geodesic(plane, segment)
    assert witness.certified
    assert math.isclose(witness.speed, 5.0)
    assert witness.max_deviation < 1e-12

    bent = Curve(lambda t: np.array([t, t * (1 - t)]))
    assert not is_geodesic(plane, bent).certified
    with raises(ValueError):
        is_geodesic(plane, segment, grid_size=1)
    with raises(ValueError):
        is_geodesic(plane, segment, mode="local")


def test_is_geodesic_local_arc():
    arc = make_space({"kind": "circle", "metric": "arc"})
    assert not is_geodesic(arc, _long_arc(), grid_size=33).certified
    local = is_geodesic(arc, _long_arc(), grid_size=33, mode="local", window=0.1)
    assert local.certified
    assert math.isclose(local.speed, 1.5 * math.pi)


def test_find_epsilon_midpoint():
    plane = make_space("euclidean")
    result = find_epsilon_midpoint(plane, np.zeros(2), np.array([2.0, 2.0]))
    assert np.allclose(result.point, [1.0, 1.0])
    assert result.epsilon < 1e-12

    chord = make_space({"kind": "circle", "metric": "chord"})
    with raises(UnsupportedCapabilityError):
        find_epsilon_midpoint(chord, 0.0, math.pi / 2)
    result = find_epsilon_midpoint(chord, 0.0, math.pi / 2, epsilon=0.1, budget=2000)
    assert result.epsilon <= 0.1
    assert math.isclose(midpoint_defect(chord, 0.0, math.pi / 2, result.point), result.epsilon)
    # The best ε-midpoint of a quarter circle in the chord metric has ε ≈ 0.058.
    with raises(MidpointNotFoundError) as error:
        find_epsilon_midpoint(chord, 0.0, math.pi / 2, epsilon=0.01, budget=2000)
    assert error.value.pair == (0.0, math.pi / 2)

    bare = SpaceHandle(distance=lambda p, q: abs(p - q))
    with raises(UnsupportedCapabilityError):
        find_epsilon_midpoint(bare, 0.0, 1.0, epsilon=0.1)


@mark.parametrize("epsilon", [1e-2, 1e-4])
@mark.parametrize("space_name", ["euclidean", "tripod"])
def test_dyadic_geodesic_lipschitz(space_name, epsilon):
    if space_name == "euclidean":
        space = make_space("euclidean")
        x, y = np.array([-1.0, 0.5]), np.array([2.0, 3.0])
    else:
        tree = MetricTreeSpace.tripod()
        space = tree.handle()
        x, y = tree.vertex("a"), tree.vertex("b")
    depth = 8
    path = dyadic_geodesic(space, x, y, depth, epsilon_total=epsilon)
    constant = space.measure(x, y) + epsilon
    params = path.params
    points = path.points
    assert len(points) == 2**depth + 1
    for i in range(0, len(points), 4):
        for j in range(i + 1, len(points), 3):
            assert (space.measure(points[i], points[j])
                    <= constant * abs(params[j] - params[i]) + 1e-9)


def test_dyadic_geodesic_errors():
    plane = make_space("euclidean")
    with raises(ValueError):
        dyadic_geodesic(plane, np.zeros(2), np.ones(2), 0)
    with raises(ValueError):
        dyadic_geodesic(plane, np.zeros(2), np.ones(2), 3, epsilon_total=0.0)

    # An oracle that returns the start point is rejected and the sampler only offers the ends.
    lazy = SpaceHandle(distance=lambda p, q: abs(p - q), midpoint_oracle=lambda p, q, eps: p,
                       sampler=lambda seed: iter([0.0, 1.0]))
    with raises(MidpointNotFoundError) as error:
        dyadic_geodesic(lazy, 0.0, 1.0, 2)
    assert error.value.pair == (0.0, 1.0)

    bare = SpaceHandle(distance=lambda p, q: abs(p - q), midpoint_oracle=lambda p, q, eps: p)
    with raises(UnsupportedCapabilityError):
        dyadic_geodesic(bare, 0.0, 1.0, 2)


def test_midpoint_limit():
    plane = make_space("euclidean")
    result = midpoint_limit(plane, np.zeros(2), np.array([4.0, 0.0]))
    assert np.allclose(result.point, [2.0, 0.0])

    punctured = make_space("punctured_plane")
    with raises(IncompleteSpaceError) as error:
        midpoint_limit(punctured, np.array([-1.0, 0.0]), np.array([1.0, 0.0]))
    assert error.value.epsilon > 0
    assert np.linalg.norm(error.value.candidate) < 1e-3
    with raises(ValueError):
        midpoint_limit(plane, np.zeros(2), np.ones(2), schedule=[0.1, 0.2])


def test_midpoint_limit_sampler_only():
    def sampler(seed):
        rng = np.random.default_rng(seed)
        while True:
            yield rng.normal(size=2)

    sampled_plane = SpaceHandle(distance=lambda p, q: float(np.linalg.norm(p - q)),
                                sampler=sampler)
    x, y = np.array([-1.0, 0.0]), np.array([1.0, 0.0])
    # Sampling cannot reach a 1e-6-midpoint, which is not a sign of incompleteness.
    with raises(NoConvergenceError):
        midpoint_limit(sampled_plane, x, y, budget=500)
    result = midpoint_limit(sampled_plane, x, y, tol=1.0, budget=500)
    assert result.epsilon <= 0.05
    assert np.linalg.norm(result.point) < 0.5


def test_unit_reparametrize():
    plane = make_space("euclidean")
    segment = plane.geodesic_oracle(np.zeros(2), np.array([3.0, 4.0]))
    unit = unit_reparametrize(plane, segment)
    assert unit.domain == (0.0, 5.0)
    assert np.allclose(unit(2.5), [1.5, 2.0])
    assert math.isclose(is_geodesic(plane, unit).speed, 1.0)
    assert unit_reparametrize(plane, segment, (0.0, 1.0)) is segment

    point = plane.geodesic_oracle(np.ones(2), np.ones(2))
    assert unit_reparametrize(plane, point).domain == (0.0, 0.0)
    with raises(DegenerateCurveError):
        unit_reparametrize(plane, point, (0.0, 1.0))


def test_unique_geodesic_check():
    plane = make_space("euclidean")
    assert unique_geodesic_check(plane, np.zeros(2), np.array([1.0, 2.0])).passed

    tree = MetricTreeSpace.tripod()
    assert unique_geodesic_check(tree.handle(), tree.vertex("a"), tree.vertex("c")).passed

    arc = make_space({"kind": "circle", "metric": "arc"})
    assert unique_geodesic_check(arc, 0.0, 1.0).passed
    antipodal = unique_geodesic_check(arc, 0.0, math.pi)
    assert antipodal.status == Status.FAIL
    assert math.isclose(antipodal.worst_violation, math.pi)
    assert antipodal.witness[0]["construction"] == "reversed"

    chord = make_space({"kind": "circle", "metric": "chord"})
    assert unique_geodesic_check(chord, 0.0, 1.0).status == Status.SKIPPED


def test_local_geodesic_check():
    arc = make_space({"kind": "circle", "metric": "arc"})
    verdict = local_geodesic_check(arc, _long_arc(), window=0.1)
    assert verdict.status == Status.FAIL
    assert math.isclose(verdict.details["local_speed"], 1.5 * math.pi)

    short = Curve(lambda t: 2.0 * t)
    assert local_geodesic_check(arc, short, window=0.1).passed

    plane = make_space("euclidean")
    bent = Curve(lambda t: np.array([math.cos(3 * t), math.sin(3 * t)]))
    assert local_geodesic_check(plane, bent, window=0.2).passed
