import math

import numpy as np
from pytest import mark, raises

from metricat.errors import DomainError, EvaluationError, UnsupportedCapabilityError
from metricat.handle import (
    SpaceHandle,
    metric_axiom_sample,
    space_distance,
    space_geodesic,
    space_midpoint,
)
from metricat.provider import make_space
from metricat.verdict import Status


def test_space_operations():
    plane = make_space("euclidean")
    p, q = np.array([0.0, 0.0]), np.array([3.0, 4.0])
    assert space_distance(plane, p, q) == 5.0
    assert np.allclose(space_midpoint(plane, p, q), [1.5, 2.0])
    curve = space_geodesic(plane, p, q)
    assert np.allclose(curve(0.2), [0.6, 0.8])
    with raises(DomainError):
        space_distance(plane, p, np.array([1.0, 2.0, 3.0]))


def test_missing_oracles():
    chord = make_space({"kind": "circle", "metric": "chord"})
    assert math.isclose(space_distance(chord, 0.0, math.pi), 2.0)
    with raises(UnsupportedCapabilityError):
        space_midpoint(chord, 0.0, 1.0)
    with raises(UnsupportedCapabilityError):
        space_geodesic(chord, 0.0, 1.0)


@mark.parametrize("value", [-1.0, float("nan"), float("inf")])
def test_bad_distance_values(value):
    broken = SpaceHandle(distance=lambda p, q: value)
    with raises(EvaluationError):
        broken.measure(0, 1)


def test_sample():
    finite = SpaceHandle(distance=lambda p, q: abs(p - q), sampler=lambda seed: iter(range(3)))
    assert finite.sample(0, 3) == [0, 1, 2]
    with raises(UnsupportedCapabilityError):
        finite.sample(0, 4)
    with raises(UnsupportedCapabilityError):
        SpaceHandle(distance=lambda p, q: abs(p - q)).sample(0, 1)
    assert finite.encode(2) == 2


def test_metric_axioms():
    def sampler(seed):
        rng = np.random.default_rng(seed)
        while True:
            yield float(rng.uniform(0, 1))

    squared = SpaceHandle(distance=lambda p, q: (p - q)**2, sampler=sampler)
    verdict = metric_axiom_sample(squared, count=200)
    assert verdict.status == Status.FAIL
    assert verdict.witness[0]["axiom"] == "triangle inequality"
    assert len(verdict.witness[0]["points"]) == 3

    line = SpaceHandle(distance=lambda p, q: abs(p - q), sampler=sampler)
    assert metric_axiom_sample(line, count=200).passed
    assert metric_axiom_sample(SpaceHandle(distance=abs)).status == Status.SKIPPED
