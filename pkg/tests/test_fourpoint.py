import math

import numpy as np
from pytest import mark, raises

from metricat.cat0 import find_subembedding, four_point_scan
from metricat.errors import NotEmbeddableError
from metricat.handle import SpaceHandle
from metricat.provider import make_space
from metricat.spaces import MetricTreeSpace
from metricat.verdict import Status


def _distances(x_1, x_2, y_1, y_2, measure):
    return (measure(x_1, y_1), measure(x_1, y_2), measure(x_2, y_1), measure(x_2, y_2),
            measure(x_1, x_2), measure(y_1, y_2))


def test_subembedding_square():
    root_2 = math.sqrt(2)
    result = find_subembedding(1.0, 1.0, 1.0, 1.0, root_2, root_2)
    assert result.satisfied
    assert result.refutation is None
    x_1, x_2, y_1, y_2 = result.planar_points
    assert math.isclose(np.linalg.norm(x_1 - y_1), 1.0)
    assert math.isclose(np.linalg.norm(x_2 - y_2), 1.0)
    assert np.linalg.norm(y_1 - y_2) >= root_2 - 1e-9


def test_subembedding_collapsed_pair():
    result = find_subembedding(1.0, 2.0, 1.0, 2.0, 0.0, 1.0)
    assert result.satisfied
    x_1, x_2, _, _ = result.planar_points
    assert np.allclose(x_1, x_2)


def test_subembedding_straightened():
    # The glued triangles of the tripod center, one leaf and the two other leaves are flat.
    tree = MetricTreeSpace.tripod()
    handle = tree.handle()
    points = [tree.vertex(label) for label in "oabc"]
    result = find_subembedding(*_distances(*points, handle.measure))
    assert result.satisfied
    assert math.isclose(result.slack[0], math.sqrt(3) - 1)
    assert abs(result.slack[1]) < 1e-9
    x_1, x_2, _, _ = result.planar_points
    assert math.isclose(np.linalg.norm(x_1 - x_2), math.sqrt(3))


def test_subembedding_refuted_on_circle():
    arc = make_space({"kind": "circle", "metric": "arc"})
    quarter = math.pi / 2
    values = _distances(0.0, 2 * quarter, quarter, 3 * quarter, arc.measure)
    result = find_subembedding(*values)
    assert not result.satisfied
    assert result.planar_points is None
    assert result.refutation["construction"] == "glued"
    assert result.slack[1] < 0


@mark.parametrize(
    "values,error",
    [
        ((1.0, 1.0, 1.0, 1.0, 5.0, 1.0), NotEmbeddableError),
        ((1.0, -1.0, 1.0, 1.0, 1.0, 1.0), ValueError),
    ]
)
def test_subembedding_errors(values, error):
    with raises(error):
        find_subembedding(*values)


@mark.parametrize("n_dim", [1, 2, 5])
def test_four_point_scan_euclidean(n_dim):
    space = make_space({"kind": "euclidean", "n": n_dim})
    verdict = four_point_scan(space, seed=1, count=1000, tol=1e-6)
    assert verdict.passed
    assert verdict.details["cases"] == 3000
    assert verdict.details["quadruples"] == 1000


def test_four_point_scan_tripod():
    verdict = four_point_scan(MetricTreeSpace.tripod().handle(), count=1000, tol=1e-6)
    assert verdict.passed
    assert verdict.details["cases"] == 3000


def test_four_point_scan_random_trees():
    rng = np.random.default_rng(12)
    for seed in range(50):
        tree = MetricTreeSpace.random_tree(int(rng.integers(1, 65)), seed=seed)
        verdict = four_point_scan(tree.handle(), seed=seed, count=1000, tol=1e-6)
        assert verdict.passed, verdict.witness


def test_four_point_scan_circle():
    arc = make_space({"kind": "circle", "metric": "arc"})
    verdict = four_point_scan(arc, seed=0, count=1000, tol=1e-6)
    assert verdict.status == Status.FAIL
    case = verdict.witness[0]
    assert len(case["quadruple"]) == 4
    assert sorted(case["pairing"]) == [0, 1, 2, 3]
    assert "construction" in case["refutation"]


def test_four_point_scan_without_sampler():
    bare = SpaceHandle(distance=lambda p, q: abs(p - q))
    assert four_point_scan(bare).status == Status.SKIPPED
