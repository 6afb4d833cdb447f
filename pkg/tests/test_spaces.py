import math

import numpy as np
from pytest import mark, raises

from metricat.errors import SpaceValidationError
from metricat.handle import metric_axiom_sample
from metricat.provider import get_space_provider, make_space
from metricat.spaces import (
    CircleSpace,
    DistanceMatrixSpace,
    EuclideanSpace,
    MetricTreeSpace,
    ProductWithLineSpace,
    PuncturedPlane,
    TreePoint,
)
from metricat.testutils import check_space, check_space_provider


def test_builtin_provider():
    check_space_provider("builtin")


@mark.parametrize("space", get_space_provider("builtin").spaces)
def test_space_validation(space):
    check_space(space, provenance="builtin")


class BrokenSchemaSpace(EuclideanSpace):
    @classmethod
    def _param_schema(cls):
        return {"n": {"type": "integer", "minimum": "one"}}


def test_schema_val():
    with raises(ValueError):
        check_space(BrokenSchemaSpace, "builtin")


def test_euclidean():
    space = EuclideanSpace(3)
    assert space.distance([0, 0, 0], [1, 2, 2]) == 3.0
    assert np.allclose(space.midpoint([0, 0, 0], [2, 4, 6]), [1, 2, 3])
    assert not space.contains([1.0, 2.0])
    assert not space.contains([1.0, np.nan, 2.0])
    assert "Kind: euclidean" in str(space)


@mark.parametrize(
    "metric,p,q,distance",
    [
        ("arc", 0.0, math.pi / 2, math.pi / 2),
        ("arc", 0.1, 2 * math.pi - 0.1, 0.2),
        ("chord", 0.0, math.pi, 2.0),
        ("chord", 0.0, math.pi / 2, math.sqrt(2)),
    ]
)
def test_circle_distance(metric, p, q, distance):
    assert math.isclose(CircleSpace(metric).distance(p, q), distance)


def test_circle():
    arc = CircleSpace("arc")
    assert arc.has_midpoints and arc.has_geodesics
    assert math.isclose(arc.midpoint(0.0, math.pi), math.pi / 2)
    assert math.isclose(arc.midpoint(6.0, 0.5), (6.0 + (0.5 + 2 * math.pi - 6.0) / 2)
                        % (2 * math.pi))
    assert math.isclose(arc.diameter, math.pi)
    chord = CircleSpace("chord", circumference=4 * math.pi)
    assert not chord.has_midpoints
    assert chord.handle().geodesic_oracle is None
    assert math.isclose(chord.diameter, 4.0)
    assert len(chord.candidate_curves(0.0, 1.0)) == 1
    with raises(ValueError):
        CircleSpace("taxicab")
    with raises(ValueError):
        CircleSpace("arc", circumference=0.0)


def test_punctured_plane():
    space = PuncturedPlane()
    assert not space.complete
    assert not space.has_midpoints and not space.has_geodesics
    assert not space.contains(np.zeros(2))
    assert space.contains(np.array([1e-6, 0.0]))
    x, y = np.array([-1.0, 0.0]), np.array([1.0, 2.0])
    assert len(space.candidate_curves(x, y)) == 1
    detours = space.candidate_curves(np.array([-1.0, 0.0]), np.array([1.0, 0.0]))
    assert len(detours) == 5
    for curve in detours:
        params, points = curve.sample(33)
        assert all(space.contains(point) for point in points)
    handle = space.handle()
    assert handle.completeness_flag is False


def test_tree():
    tree = MetricTreeSpace.tripod(leg=2.0)
    a, b, o = tree.vertex("a"), tree.vertex("b"), tree.vertex("o")
    assert tree.distance(a, b) == 4.0
    assert tree.distance(a, o) == 2.0
    mid = tree.midpoint(a, b)
    assert math.isclose(tree.distance(mid, o), 0.0, abs_tol=1e-12)
    assert tree.contains(TreePoint(1, 1.0))
    assert not tree.contains(TreePoint(1, 2.5))
    assert not tree.contains(TreePoint(5, 0.0))
    assert tree.encode_point(TreePoint(2, 0.5)) == {"edge": ["o", "c"], "offset": 0.5}
    assert tree.diameter == 4.0
    with raises(KeyError):
        tree.vertex("z")

    path = MetricTreeSpace([["a", "b", 1.0], ["b", "c", 2.0], ["c", "d", 0.5]])
    geodesic = path.geodesic(path.vertex("a"), path.vertex("d"))
    assert math.isclose(path.distance(geodesic(0.5), path.vertex("b")), 0.75)
    assert math.isclose(path.distance(geodesic(0.5), path.vertex("c")), 1.25)


def test_random_tree():
    tree = MetricTreeSpace.random_tree(15, seed=7)
    assert len(tree.edges) == 15
    assert tree.to_dict() == MetricTreeSpace.random_tree(15, seed=7).to_dict()
    assert metric_axiom_sample(tree.handle(), count=200, seed=1).passed


@mark.parametrize(
    "edges,axiom",
    [
        ([["a", "b", 0.0]], "positivity"),
        ([["a", "b", -1.0]], "positivity"),
        ([["a", "a", 1.0]], "tree"),
        ([["a", "b", 1.0], ["b", "c", 1.0], ["c", "a", 1.0]], "tree"),
        ([["a", "b", 1.0], ["c", "d", 1.0], ["d", "e", 1.0], ["e", "c", 1.0]], "tree"),
        ([], "tree"),
    ]
)
def test_tree_validation(edges, axiom):
    with raises(SpaceValidationError) as error:
        MetricTreeSpace(edges)
    assert error.value.axiom == axiom


def test_product_with_line():
    space = ProductWithLineSpace(MetricTreeSpace.tripod())
    a, b = space.inner.vertex("a"), space.inner.vertex("b")
    assert space.distance((a, 0.0), (b, 1.5)) == 2.5
    mid = space.midpoint((a, 0.0), (b, 1.0))
    assert mid[1] == 0.5
    assert space.has_geodesics and space.has_midpoints
    assert space.encode_point((a, 1.0)) == {"base": {"edge": ["o", "a"], "offset": 1.0},
                                            "t": 1.0}
    from_dict = ProductWithLineSpace({"kind": "euclidean", "n": 2})
    assert isinstance(from_dict.inner, EuclideanSpace)
    assert not space.contains((a, float("inf")))


def test_distance_matrix():
    space = DistanceMatrixSpace([[0, 3, 4], [3, 0, 5], [4, 5, 0]], labels=["p", "q", "r"])
    assert space.distance("q", "r") == 5.0
    assert space.contains("p") and not space.contains("s")
    assert space.diameter == 5.0
    handle = space.handle()
    assert handle.midpoint_oracle is None and handle.geodesic_oracle is None
    assert set(handle.sample(0, 50)) == {"p", "q", "r"}


@mark.parametrize(
    "matrix,axiom,witness",
    [
        ([[0, 1, 10], [1, 0, 1], [10, 1, 0]], "triangle", ("1", "2", "3")),
        ([[0, 1], [2, 0]], "symmetry", ("1", "2")),
        ([[0, -1], [-1, 0]], "positivity", ("1", "2")),
        ([[1, 1], [1, 0]], "identity", ("1",)),
        ([[0, np.inf], [np.inf, 0]], "finite", ("1", "2")),
        ([[0, 1]], "shape", None),
    ]
)
def test_distance_matrix_validation(matrix, axiom, witness):
    with raises(SpaceValidationError) as error:
        DistanceMatrixSpace(matrix)
    assert error.value.axiom == axiom
    assert error.value.witness == witness


def test_make_space_from_spec():
    handle = make_space('{"kind": "circle", "metric": "chord"}')
    assert handle.kind == "circle"
    assert not handle.has_midpoints
    assert make_space("MetricTreeSpace").kind == "metric_tree"
    with raises(SpaceValidationError):
        make_space({"kind": "distance_matrix", "matrix": [[0, 1, 10], [1, 0, 1], [10, 1, 0]]})
