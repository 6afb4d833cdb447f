"""Running suites of checks on a space.

Each suite draws its samples from its own seed. The seeds are spawned from the
configured seed over the full list of known suites, so the samples of a suite
do not depend on which other suites run or on how many run in parallel.
"""

from __future__ import annotations

import logging
import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Any, Callable

import numpy as np
from tqdm import tqdm

from metricat.cat0.convexity import convexity_check
from metricat.cat0.flatness import flatness_detect
from metricat.cat0.fourpoint import four_point_scan
from metricat.cat0.projection import ConvexSet, project_to_convex
from metricat.cat0.triangle import cat0_triangle_check
from metricat.comparison import GeodesicTriangle
from metricat.config import SUITES, SuiteConfig
from metricat.curve import Curve
from metricat.errors import MetricatError, UndefinedAngleError, UnsupportedCapabilityError
from metricat.geodesic import is_geodesic, unique_geodesic_check
from metricat.handle import SpaceHandle
from metricat.length import is_length_space_sample
from metricat.provider import make_space
from metricat.report import Report
from metricat.verdict import CheckVerdict, Status, VerdictBuilder

logger = logging.getLogger(__name__)

MAX_PAIRS = 100
MAX_TRIANGLES = 200
MAX_SMALL = 20
STRIP_HALF_WIDTH = 4.0

Runner = Callable[[SpaceHandle, SuiteConfig, int], CheckVerdict]


def suite_seeds(seed: int) -> dict[str, int]:
    """Seed of every known suite, derived from the configured seed."""
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    return {suite: int(child.generate_state(1)[0]) for suite, child in zip(SUITES, children)}


def _missing(space: SpaceHandle, *capabilities: str) -> list[str]:
    names = {"sampler": space.has_sampler, "geodesic oracle": space.has_geodesics,
             "midpoint oracle": space.has_midpoints}
    return [name for name in capabilities if not names[name]]


def _skip_missing(space: SpaceHandle, *capabilities: str):
    missing = _missing(space, *capabilities)
    if missing:
        return CheckVerdict.skipped(f"Space '{space.kind}' has no {' or '.join(missing)}.")
    return None


def _merge(builder: VerdictBuilder, verdict: CheckVerdict, **case: Any) -> None:
    """Record a sub-verdict as one case of a suite."""
    if verdict.status == Status.INCONCLUSIVE:
        builder.inconclusive(str(verdict.details.get("reasons", verdict.details.get("reason"))))
        return
    if verdict.status == Status.SKIPPED:
        return
    first = verdict.witness[0] if verdict.witness else {}
    builder.record(verdict.worst_violation, **case, witness=first)


def run_length_space(space: SpaceHandle, config: SuiteConfig, seed: int) -> CheckVerdict:
    """Compare distances with the lengths of candidate curves on random pairs."""
    skip = _skip_missing(space, "sampler")
    if skip is not None:
        return skip
    n_pairs = min(config.samples, MAX_PAIRS)
    points = space.sample(seed, 2 * n_pairs)
    pairs = []
    for x, y in zip(points[0::2], points[1::2]):
        candidates = space.candidate_oracle(x, y) if space.candidate_oracle else []
        pairs.append((x, y, candidates))
    if all(len(candidates) == 0 for _, _, candidates in pairs):
        return CheckVerdict.skipped(f"Space '{space.kind}' has no candidate curves.")
    return is_length_space_sample(space, pairs, rel_tol=config.tol)


def run_geodesic(space: SpaceHandle, config: SuiteConfig, seed: int) -> CheckVerdict:
    """Check constant speed and uniqueness of oracle geodesics on random pairs."""
    skip = _skip_missing(space, "sampler", "geodesic oracle")
    if skip is not None:
        return skip
    n_pairs = min(config.samples, MAX_PAIRS)
    points = space.sample(seed, 2 * n_pairs)
    builder = VerdictBuilder(config.tol)
    for x, y in zip(points[0::2], points[1::2]):
        witness = is_geodesic(space, space.geodesic_oracle(x, y), tol=config.tol)  # type: ignore
        builder.record(witness.max_deviation, check="constant speed", x=x, y=y,
                       speed=witness.speed)
        _merge(builder, unique_geodesic_check(space, x, y, tol=config.tol), check="uniqueness",
               x=x, y=y)
    return builder.build(pairs=n_pairs)


def run_four_point(space: SpaceHandle, config: SuiteConfig, seed: int) -> CheckVerdict:
    """Scan random quadruples for the four-point condition."""
    return four_point_scan(space, seed, config.samples, config.tol)


def _triangles(space: SpaceHandle, seed: int, count: int):
    points = space.sample(seed, 3 * count)
    for i in range(count):
        yield GeodesicTriangle.from_space(space, *points[3 * i:3 * i + 3])


def run_cat0_triangles(space: SpaceHandle, config: SuiteConfig, seed: int) -> CheckVerdict:
    """Check the CAT(0) inequality on random geodesic triangles."""
    skip = _skip_missing(space, "sampler", "geodesic oracle")
    if skip is not None:
        return skip
    count = min(config.samples, MAX_TRIANGLES)
    builder = VerdictBuilder(config.tol)
    for triangle in _triangles(space, seed, count):
        _merge(builder, cat0_triangle_check(space, triangle, config.grid, config.tol),
               vertices=list(triangle.vertices))
    return builder.build(triangles=count, grid=config.grid)


def run_convexity(space: SpaceHandle, config: SuiteConfig, seed: int) -> CheckVerdict:
    """Check convexity of the metric on random pairs of geodesics."""
    skip = _skip_missing(space, "sampler", "geodesic oracle")
    if skip is not None:
        return skip
    count = min(config.samples, MAX_PAIRS)
    points = space.sample(seed, 4 * count)
    geodesic = space.geodesic_oracle
    builder = VerdictBuilder(config.tol)
    for i in range(count):
        a, b, c, d = points[4 * i:4 * i + 4]
        _merge(builder, convexity_check(space, geodesic(a, b), geodesic(c, d),  # type: ignore
                                        tol=config.tol), endpoints=[a, b, c, d])
    return builder.build(pairs=count)


def run_projection(space: SpaceHandle, config: SuiteConfig, seed: int) -> CheckVerdict:
    """Project random points onto random segments.

    The angle at the projection between the point and the segment should be at
    least π/2 and projecting the projection again should not move it. Sampled
    segment points as close as the projection but far from it are counted in
    the ``ambiguous`` detail.
    """
    skip = _skip_missing(space, "sampler", "geodesic oracle")
    if skip is not None:
        return skip
    count = min(config.samples, MAX_SMALL)
    points = space.sample(seed, 3 * count)
    builder = VerdictBuilder(config.tol)
    n_ambiguous = 0
    for i in range(count):
        x, a, b = points[3 * i:3 * i + 3]
        segment = ConvexSet.segment(space, a, b)
        result = project_to_convex(space, segment, x, tol=config.tol, seed=seed + i)
        if result.angle_check is not None:
            builder.record(math.pi / 2 - result.angle_check, check="angle", x=x,
                           segment=[a, b], projection=result.point, angle=result.angle_check)
        again = project_to_convex(space, segment, result.point, tol=config.tol, seed=seed + i)
        builder.record(space.measure(again.point, result.point), check="idempotence", x=x,
                       segment=[a, b], projection=result.point)
        n_ambiguous += not result.unique
    return builder.build(projections=count, ambiguous=n_ambiguous)


def _vertical_line(base: Any) -> Curve:
    return Curve(lambda t: (base, t), (-STRIP_HALF_WIDTH, STRIP_HALF_WIDTH))


def run_flatness(space: SpaceHandle, config: SuiteConfig, seed: int) -> CheckVerdict:
    """Check that triangles with a vertex angle equal to the comparison angle are flat.

    Products with a line are also checked for flat strips between vertical lines.
    """
    skip = _skip_missing(space, "sampler", "geodesic oracle")
    if skip is not None:
        return skip
    count = min(config.samples, MAX_SMALL)
    builder = VerdictBuilder(config.tol)
    n_flat = 0
    for triangle in _triangles(space, seed, count):
        try:
            report = flatness_detect(space, (triangle, "x"), "triangle", config.grid,
                                     tol=config.tol)
        except UndefinedAngleError:
            continue
        if abs(report.details["angle"] - report.details["comparison_angle"]) <= config.tol:
            n_flat += 1
            builder.record(report.isometry_defect, mode="triangle",
                           vertices=list(triangle.vertices))
    if space.kind == "product_with_line":
        points = space.sample(seed, 2 * count)
        for first, second in zip(points[0::2], points[1::2]):
            lines = (_vertical_line(first[0]), _vertical_line(second[0]))
            bound = space.measure((first[0], 0.0), (second[0], 0.0)) + config.tol
            report = flatness_detect(space, (*lines, bound), "strip", config.grid,
                                     tol=config.tol)
            builder.record(max(report.isometry_defect, report.details["variation"]),
                           mode="strip", bases=[first[0], second[0]], width=report.strip_width)
    if builder.n_cases == 0:
        builder.inconclusive("No sampled triangle has a vertex angle equal to its comparison"
                             " angle.")
    return builder.build(flat_triangles=n_flat)


RUNNERS: dict[str, Runner] = {
    "length-space": run_length_space,
    "geodesic": run_geodesic,
    "four-point": run_four_point,
    "cat0-triangles": run_cat0_triangles,
    "convexity": run_convexity,
    "projection": run_projection,
    "flatness": run_flatness,
}


def _counted(space: SpaceHandle) -> tuple[SpaceHandle, list[int]]:
    counter = [0]
    lock = threading.Lock()
    distance = space.distance

    def counting_distance(p, q):
        with lock:
            counter[0] += 1
        return distance(p, q)

    return replace(space, distance=counting_distance), counter


def _run_one(space: SpaceHandle, config: SuiteConfig, suite: str,
             seed: int) -> tuple[CheckVerdict, int]:
    counted, counter = _counted(space)
    try:
        verdict = RUNNERS[suite](counted, config, seed)
    except UnsupportedCapabilityError as err:
        verdict = CheckVerdict.skipped(str(err))
    except MetricatError as err:
        logger.warning("Suite '%s' stopped: %s", suite, err)
        verdict = CheckVerdict(Status.INCONCLUSIVE, 0.0, [],
                               {"reason": f"{type(err).__name__}: {err}"})
    logger.info("Suite '%s': %s (worst violation %s)", suite, verdict.status.value,
                verdict.worst_violation)
    return verdict, counter[0]


def run_suite(config: SuiteConfig, progress_bar: bool = False) -> Report:
    """Run the configured suites on the configured space.

    Parameters
    ----------
    config:
        Space, suites, sample count, seed and tolerance.
    progress_bar:
        Whether to show a progress bar over the suites.

    Returns
    -------
        Report with one verdict per suite. The report is deterministic for a
        given configuration, also with several jobs.
    """
    start = time.perf_counter()
    space = make_space(config.space)
    seeds = suite_seeds(config.seed)
    with ThreadPoolExecutor(max_workers=config.n_jobs) as executor:
        results = list(tqdm(
            executor.map(lambda suite: _run_one(space, config, suite, seeds[suite]),
                         config.suites),
            total=len(config.suites), disable=not progress_bar))
    verdicts = {suite: verdict for suite, (verdict, _) in zip(config.suites, results)}
    stats = {suite: {"distance_evaluations": count}
             for suite, (_, count) in zip(config.suites, results)}
    report = Report(config, space, verdicts, stats, wall_time=time.perf_counter() - start)
    if config.out is not None:
        report.save(config.out, config.format)
    return report
