"""Module providing a Command Line Interface (CLI) for metricat.

It provides functionality to run check suites on a space, to print the JSON
schemas of reports and space specifications, and to dump the coordinates of a
comparison triangle.
"""
import argparse
import json
import logging
import pathlib
import sys
from argparse import RawDescriptionHelpFormatter

try:  # Python < 3.10 (backport)
    from importlib_metadata import entry_points, version
except ImportError:
    from importlib.metadata import entry_points, version  # type: ignore [assignment]

import numpy as np
import polars as pl

from metricat.comparison import GeodesicTriangle, comparison_point
from metricat.config import SuiteConfig
from metricat.errors import MetricatError
from metricat.provider import make_space
from metricat.report import emit_report
from metricat.suite import run_suite
from metricat.validation import create_space_schema, report_schema

EXAMPLE_CHECK = "metricat check --space tripod.edges --suite four-point,cat0-triangles --samples 500 --out report.json"  # noqa # pylint: disable=line-too-long
EXAMPLE_TRIANGLE = """metricat triangle-csv --space '{"kind": "circle", "metric": "arc"}' -o triangle.csv"""  # noqa # pylint: disable=line-too-long

MAIN_HELP_MESSAGE = f"""
Metricat CLI version {version("metricat")}

Usage: metricat [subcommand] [options]

Available subcommands:
    check:
        Run suites of checks (length space, geodesics, CAT(0) conditions, ...) on a
        space and write a report with the verdicts and witnesses.
    schema:
        Print the JSON schema of reports, or of space specifications.
    triangle-csv:
        Sample a geodesic triangle and write the coordinates of its comparison
        triangle and comparison points to a CSV file.

A space is given as a file (.json specification, .csv distance matrix or an edge
list of a metric tree), as inline JSON or as the name of a builtin space kind.

The exit code of `check` is 0 if no suite failed and at least one passed, 1 if
any suite failed and 2 if nothing could be verified.

Example usage:

{EXAMPLE_CHECK}
{EXAMPLE_TRIANGLE}


Program information:
    -v, --version - display CLI version and exit
    -h, --help    - display this help file and exit
"""

ENTRYPOINTS = ["check", "schema", "triangle-csv"]


def main() -> None:
    """CLI pointing to different entrypoints."""
    # show help by default, else consume first argument
    subcommand = "--help" if len(sys.argv) < 2 else sys.argv.pop(1)

    if subcommand in ["-h", "--help"]:
        print(MAIN_HELP_MESSAGE)
    elif subcommand in ["-v", "--version"]:
        print(f"Metricat CLI version {version('metricat')}")

    elif subcommand == "check":
        check()
    elif subcommand == "schema":
        schema()
    elif subcommand == "triangle-csv":
        triangle_csv()
    else:
        print(f"Invalid subcommand ({subcommand}). For help see metricat --help")
        sys.exit(1)


def check() -> None:
    """Program to run check suites on a space and emit a report."""
    parser = argparse.ArgumentParser(
        prog="metricat check",
        description=f"""Run suites of checks on a space.
The report is written as JSON (default) or as a summary with one line per suite.

Example: {EXAMPLE_CHECK}
""",
        formatter_class=RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--space",
        help="space file (.json, .csv or edge list), inline JSON or a space kind.",
        default=None,
    )
    parser.add_argument(
        "--config",
        help="configuration file (*.toml); command line options take precedence.",
        type=pathlib.Path,
        default=None,
    )
    parser.add_argument(
        "--suite", "--suites",
        dest="suites",
        help="comma separated list of suites to run (default all).",
        default=None,
    )
    parser.add_argument("--samples", help="number of samples per suite.", type=int, default=None)
    parser.add_argument("--seed", help="seed of all random sampling.", type=int, default=None)
    parser.add_argument("--tol", help="tolerance of the checks.", type=float, default=None)
    parser.add_argument(
        "--out", "-o",
        help="report file, the report is printed if not given.",
        type=pathlib.Path,
        default=None,
    )
    parser.add_argument(
        "--format",
        help="report format.",
        choices=["json", "text"],
        default=None,
    )
    parser.add_argument("--grid", help="grid points per triangle side.", type=int, default=None)
    parser.add_argument("--jobs", help="number of suites run in parallel.", type=int,
                        default=None)
    parser.add_argument("--verbose", help="log the progress of the checks.",
                        action="store_true")
    parser.add_argument("--progress", help="display a progress bar.", action="store_true")

    # parse the args without the subcommand
    args, _ = parser.parse_known_args()
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    options = {"space": args.space, "suites": args.suites, "samples": args.samples,
               "seed": args.seed, "tol": args.tol, "out": args.out, "format": args.format,
               "grid": args.grid, "n_jobs": args.jobs}
    try:
        if args.config is not None:
            config = SuiteConfig.from_toml(args.config, **options)
        else:
            if args.space is None:
                parser.error("Please supply either a space or a configuration file.")
            config = SuiteConfig(**{key: value for key, value in options.items()
                                    if value is not None})
        report = run_suite(config, progress_bar=args.progress)
    except (MetricatError, ValueError, OSError) as err:
        print(f"Error: {err}", file=sys.stderr)
        sys.exit(2)

    if config.out is None:
        print(emit_report(report, config.format))
    sys.exit(report.exit_code)


def schema() -> None:
    """Program to print the JSON schema of reports or space specifications."""
    parser = argparse.ArgumentParser(
        prog="metricat schema",
        description="Print the JSON schema of reports, or of space specifications.",
    )

    parser.add_argument(
        "plugins",
        help="Plugins to include in the space schema (default builtin)",
        nargs="*"
    )
    parser.add_argument(
        "--space",
        help="print the schema of space specifications instead of reports",
        action="store_true",
    )
    parser.add_argument(
        "-l", "--list",
        help="display available plugins and quit",
        action="store_true",
    )

    # parse the args without the subcommand
    args, _ = parser.parse_known_args()

    # deduplicated list of plugins for schema
    plugins_avail = {entry.name for entry in entry_points(group="metricat.space_provider")}
    plugins_avail.add("builtin")

    if args.list:
        for a in sorted(plugins_avail):
            print(a)
        return

    if not args.space:
        print(json.dumps(report_schema(), indent=2))
        return

    plugins = {"builtin", *args.plugins}
    if len(plugins - plugins_avail) > 0:
        notfound = ", ".join(plugins - plugins_avail)
        pl_avail = ", ".join(plugins_avail - {"builtin"})
        errmsg = (
            f"\n  Requested plugin(s) not found: {notfound}"
            f"\n  Available plugins: {pl_avail}"
        )
        parser.error(errmsg)
    print(json.dumps(create_space_schema(sorted(plugins)), indent=2))


def triangle_csv() -> None:
    """Program to dump the comparison triangle of a sampled geodesic triangle."""
    parser = argparse.ArgumentParser(
        prog="metricat triangle-csv",
        description=f"""Sample a geodesic triangle in a space and write its comparison triangle.
Each row holds a point of the comparison triangle: the three vertices and the
comparison points of equally spaced points on the sides.

Example: {EXAMPLE_TRIANGLE}
""",
        formatter_class=RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--space",
        help="space file (.json, .csv or edge list), inline JSON or a space kind.",
        required=True,
    )
    parser.add_argument(
        "--output", "-o",
        help="output CSV file, the table is printed if not given.",
        type=pathlib.Path,
        default=None,
    )
    parser.add_argument("--seed", help="seed of the sampled vertices.", type=int, default=0)
    parser.add_argument("--grid", help="points per side.", type=int, default=9)

    args, _ = parser.parse_known_args()
    try:
        space_spec = SuiteConfig(args.space).space
        space = make_space(space_spec)
        triangle = GeodesicTriangle.from_space(space, *space.sample(args.seed, 3))
        comp = triangle.comparison(space)
    except (MetricatError, ValueError, OSError) as err:
        print(f"Error: {err}", file=sys.stderr)
        sys.exit(2)

    rows = []
    for name, vertex in zip("xyz", comp.vertices):
        rows.append({"kind": "vertex", "side": name, "fraction": 0.0,
                     "u": float(vertex[0]), "v": float(vertex[1])})
    for side in ("xy", "xz", "yz"):
        length = comp.side_length(side)
        for fraction in np.linspace(0, 1, args.grid):
            point = comparison_point(comp, side, fraction * length)
            rows.append({"kind": "grid", "side": side, "fraction": float(fraction),
                         "u": float(point[0]), "v": float(point[1])})
    data_frame = pl.DataFrame(rows)
    if args.output is None:
        print(data_frame.write_csv())
    else:
        data_frame.write_csv(args.output)


if __name__ == "__main__":
    main()
