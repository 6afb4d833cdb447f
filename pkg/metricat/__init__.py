"""Metricat: sampled verification of metric geometry.

Metricat has three main purposes:

1. Spaces: Metricat describes metric spaces by their oracles, a distance and
optionally exact midpoints, geodesics and a sampler. Example spaces (Euclidean
space, circles, the punctured plane, metric trees, products with a line and
finite distance matrices) are created from a small JSON specification.

2. Checks: Metricat tests the defining properties of length spaces, geodesic
spaces and CAT(0) spaces on sampled configurations. Every check returns a
verdict with the worst violation and the configurations that witness it.

3. Reports: Suites of checks are run from the command line or from Python, and
produce a versioned JSON report that is deterministic for a given seed.
"""

import logging

try:  # Python < 3.10 (backport)
    from importlib_metadata import version
except ImportError:
    from importlib.metadata import version  # type: ignore [assignment]

from metricat.comparison import GeodesicTriangle, build_comparison_triangle
from metricat.config import SuiteConfig
from metricat.curve import Curve, Polyline
from metricat.handle import SpaceHandle
from metricat.provider import create_space, make_space
from metricat.report import Report, emit_report
from metricat.spaces.base import metaspace
from metricat.spacespec import SpaceSpec
from metricat.suite import run_suite
from metricat.verdict import CheckVerdict, Status

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "CheckVerdict", "Curve", "GeodesicTriangle", "Polyline", "Report", "SpaceHandle",
    "SpaceSpec", "Status", "SuiteConfig", "build_comparison_triangle", "create_space",
    "emit_report", "make_space", "metaspace", "run_suite",
]
__version__ = version("metricat")
