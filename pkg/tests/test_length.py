import math

import numpy as np
from pytest import mark, raises, warns

from metricat.curve import Curve, Partition, Polyline
from metricat.errors import DomainError
from metricat.length import (
    INFINITY,
    curve_length,
    is_length_space_sample,
    length_metric_estimate,
    polygonal_length,
    restricted_length,
)
from metricat.provider import make_space
from metricat.verdict import Status


@mark.parametrize("n_intervals", [1, 3, 16])
def test_polygonal_length_segment(n_intervals):
    plane = make_space({"kind": "euclidean", "n": 2})
    segment = plane.geodesic_oracle(np.zeros(2), np.array([3.0, 4.0]))
    partition = Partition.uniform(segment.domain, n_intervals)
    assert math.isclose(polygonal_length(plane, segment, partition), 5.0)
    with raises(DomainError):
        polygonal_length(plane, segment, Partition((0.0, 0.5)))


def test_curve_length_half_circle():
    plane = make_space("euclidean")
    half_circle = Curve(lambda t: np.array([math.cos(t), math.sin(t)]), (0.0, math.pi))
    estimate = curve_length(plane, half_circle)
    assert estimate.converged
    assert estimate.lower_bound <= math.pi
    assert abs(estimate.lower_bound - math.pi) < 1e-6

    shallow = curve_length(plane, half_circle, max_depth=3)
    assert not shallow.converged
    assert shallow.refinement_depth == 3
    assert shallow.lower_bound < estimate.lower_bound


def test_restricted_length_additive():
    plane = make_space("euclidean")
    half_circle = Curve(lambda t: np.array([math.cos(t), math.sin(t)]), (0.0, math.pi))
    first = restricted_length(plane, half_circle, 0.0, 1.0).lower_bound
    second = restricted_length(plane, half_circle, 1.0, math.pi).lower_bound
    whole = curve_length(plane, half_circle).lower_bound
    assert abs(first - 1.0) < 1e-6
    assert abs(first + second - whole) < 1e-6


def test_constant_curve_length():
    plane = make_space("euclidean")
    estimate = curve_length(plane, Curve.constant(np.ones(2), (0.0, 0.0)))
    assert estimate.lower_bound == 0.0 and estimate.converged


def test_length_metric_punctured_plane():
    punctured = make_space("punctured_plane")
    x, y = np.array([-1.0, 0.0]), np.array([1.0, 0.0])
    detours = punctured.candidate_oracle(x, y)
    assert len(detours) == 5
    assert abs(length_metric_estimate(punctured, x, y, detours) - 2.0) < 1e-3
    assert length_metric_estimate(punctured, x, y, []) == INFINITY

    wrong = Polyline.from_points([x, np.array([0.0, 1.0])])
    with raises(DomainError):
        length_metric_estimate(punctured, x, y, [wrong])


def test_chord_circle_is_not_length_space():
    chord = make_space({"kind": "circle", "metric": "chord"})
    candidates = chord.candidate_oracle(0.0, math.pi)
    verdict = is_length_space_sample(chord, [(0.0, math.pi, candidates)], max_depth=14)
    assert verdict.status == Status.FAIL
    assert abs(verdict.witness[0]["gap"] - (math.pi - 2)) < 1e-3
    assert math.isclose(verdict.witness[0]["distance"], 2.0)


def test_arc_circle_is_length_space():
    arc = make_space({"kind": "circle", "metric": "arc"})
    points = arc.sample(2, 20)
    pairs = [(x, y, arc.candidate_oracle(x, y)) for x, y in zip(points[0::2], points[1::2])]
    verdict = is_length_space_sample(arc, pairs)
    assert verdict.passed
    assert verdict.details["cases"] == 10


def test_length_space_inconclusive():
    arc = make_space({"kind": "circle", "metric": "arc"})
    verdict = is_length_space_sample(arc, [(0.0, 1.0, [])])
    assert verdict.status == Status.INCONCLUSIVE

    plane = make_space("euclidean")
    x, y = np.zeros(2), np.array([1.0, 0.0])
    segment = plane.geodesic_oracle(x, y)
    with warns(UserWarning):
        verdict = is_length_space_sample(plane, [(x, y, [segment])], max_depth=0)
    assert verdict.status == Status.INCONCLUSIVE
