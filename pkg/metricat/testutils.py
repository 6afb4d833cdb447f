"""Module for testing the functionality of spaces and space providers.

The testutils module provides a set of utilities for testing the internal
consistency of individual spaces and providers, also from plugins.
"""


from __future__ import annotations

import math

import jsonschema
from jsonschema.exceptions import SchemaError

from metricat.handle import metric_axiom_sample
from metricat.provider import BaseSpaceProvider, SpaceProviderList, get_space_provider
from metricat.report import _jsonify
from metricat.spaces.base import BaseSpace
from metricat.verdict import EXACT_TOL


def check_space_provider(provider_name: str):
    """Check internal consistency of a space provider.

    Arguments
    ---------
    provider_name:
        Name of the provider to be tested.
    """
    provider = get_space_provider(provider_name)
    assert isinstance(provider, BaseSpaceProvider)
    assert len(provider.spaces) > 0
    assert all(issubclass(space, BaseSpace) for space in provider.spaces)
    assert isinstance(provider.name, str)
    assert len(provider.name) > 0
    assert provider.name == provider_name
    assert isinstance(provider.version, str)
    assert len(provider.version) > 0
    assert len(set(provider.all_kinds)) == len(provider.all_kinds)


def check_space(space: type[BaseSpace], provenance: str, n_points: int = 12):
    """Check whether a space class behaves as its class attributes promise.

    Arguments
    ---------
    space:
        Space class to validate.
    provenance:
        Which provider/plugin/package provides the space.
    n_points:
        Number of sampled points used to check the metric axioms and oracles.
    """
    schema = space.schema()
    space_dict = space.default_space().to_dict()
    try:
        jsonschema.validate(_jsonify(space_dict), schema)
    except SchemaError as err:
        raise ValueError(f"Failed space validation for {space.__name__}") from err

    assert space.provenance == provenance
    assert space.kind != "unknown"
    assert SpaceProviderList(provenance).find_space(space.kind) is space

    default = space.default_space()
    new_space = space.from_dict(space_dict)
    assert new_space.to_dict() == space_dict
    if not space.has_sampler:
        return

    handle = default.handle()
    points = handle.sample(0, n_points)
    assert all(default.contains(point) for point in points)
    assert metric_axiom_sample(handle, count=n_points, tol=EXACT_TOL).passed
    for p, q in zip(points[0::2], points[1::2]):
        distance = handle.measure(p, q)
        if default.has_midpoints:
            mid = default.midpoint(p, q)
            assert math.isclose(handle.measure(p, mid), distance / 2, abs_tol=1e-7)
            assert math.isclose(handle.measure(mid, q), distance / 2, abs_tol=1e-7)
        if default.has_geodesics:
            curve = default.geodesic(p, q)
            assert math.isclose(handle.measure(curve(0.0), p), 0.0, abs_tol=1e-7)
            assert math.isclose(handle.measure(curve(1.0), q), 0.0, abs_tol=1e-7)
            assert math.isclose(handle.measure(curve(0.25), curve(0.75)), distance / 2,
                                abs_tol=1e-7)
