"""Module defining the configuration of a check run."""
from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Union

try:
    import tomllib
except ImportError:
    import tomli as tomllib  # type: ignore  # noqa

from metricat.ingest import ingest_space
from metricat.spacespec import SpaceSpec
from metricat.verdict import SAMPLED_TOL

SUITES = ("length-space", "geodesic", "four-point", "cat0-triangles", "convexity", "projection",
          "flatness")
"""All known suites, in the order in which they are run and reported."""

REPORT_FORMATS = ("json", "text")


class SuiteConfig():  # pylint: disable=too-many-instance-attributes
    """Configuration of a run of check suites.

    Parameters
    ----------
    space:
        Specification of the space: a SpaceSpec, a dictionary
        ``{"kind": ..., **parameters}``, a path to a space file, an inline JSON
        string or a bare kind name.
    suites:
        Suites to run, a subset of :data:`SUITES` (or a comma separated string).
        All suites by default.
    samples:
        Number of random samples per suite.
    seed:
        Seed from which all randomness is derived.
    tol:
        Tolerance for all checks.
    out:
        File to write the report to, None for standard output.
    format:
        Format of the report, ``"json"`` or ``"text"``.
    grid:
        Number of grid points per side of a triangle.
    n_jobs:
        Number of suites to run in parallel.
    """

    def __init__(
            self,
            space: Union[SpaceSpec, dict, str, Path],
            suites: Optional[Union[str, Sequence[str]]] = None,
            samples: int = 100,
            seed: int = 0,
            tol: float = SAMPLED_TOL,
            out: Optional[Union[str, Path]] = None,
            format: str = "json",  # pylint: disable=redefined-builtin
            grid: int = 9,
            n_jobs: int = 1):
        self.space = self._parse_space(space)
        if suites is None:
            suites = list(SUITES)
        elif isinstance(suites, str):
            suites = [suite.strip() for suite in suites.split(",") if suite.strip()]
        unknown = [suite for suite in suites if suite not in SUITES]
        if len(suites) == 0 or unknown:
            raise ValueError(f"Suites should be a nonempty selection from {list(SUITES)},"
                             f" got {list(suites)}.")
        # Duplicates are dropped, the order of SUITES is kept.
        self.suites = [suite for suite in SUITES if suite in suites]
        if int(samples) != samples or samples <= 0:
            raise ValueError(f"Number of samples should be a positive integer, got {samples}.")
        if not tol > 0:
            raise ValueError(f"Tolerance should be positive, got {tol}.")
        if grid < 2:
            raise ValueError(f"Grid should have at least 2 points, got {grid}.")
        if n_jobs < 1:
            raise ValueError(f"Number of jobs should be at least 1, got {n_jobs}.")
        if format not in REPORT_FORMATS:
            raise ValueError(f"Unknown report format '{format}', use one of {REPORT_FORMATS}.")
        self.samples = int(samples)
        self.seed = int(seed)
        self.tol = float(tol)
        self.out = None if out is None else Path(out)
        self.format = format
        self.grid = int(grid)
        self.n_jobs = int(n_jobs)

    @staticmethod
    def _parse_space(space) -> SpaceSpec:
        if isinstance(space, Path):
            return ingest_space(space)
        if isinstance(space, str) and not space.lstrip().startswith("{"):
            try:
                is_file = Path(space).is_file()
            except OSError:
                is_file = False
            if is_file:
                return ingest_space(space)
        return SpaceSpec.parse(space)

    @classmethod
    def from_toml(cls, config_fp: Union[str, Path], **overrides) -> SuiteConfig:
        """Create a SuiteConfig from a .toml file.

        Parameters
        ----------
        config_fp:
            Path to the file containing the configuration.
        overrides:
            Values that take precedence over the file, e.g. from the command
            line. None values are ignored.

        Returns
        -------
        suite_config:
            A fully initialized SuiteConfig instance.
        """
        try:
            with open(config_fp, "rb") as handle:
                config_dict = tomllib.load(handle)
        except FileNotFoundError as fnf_error:
            raise FileNotFoundError(f"It appears '{config_fp}' is not a valid filepath."
                                    f" Please provide a path to a .toml file to load a"
                                    f" SuiteConfig from.") from fnf_error
        except ValueError as value_error:
            raise ValueError(f"An error occured while parsing the configuration file \n"
                             f"('{Path(config_fp).name}').") from value_error
        known = ("space", "suites", "samples", "seed", "tol", "out", "format", "grid", "n_jobs")
        unknown = [key for key in config_dict if key not in known]
        if len(unknown) > 0:
            raise ValueError(f"Error parsing configuration file '{config_fp}'."
                             f" Unknown keys detected: '{unknown}'")
        config_dict.update({key: value for key, value in overrides.items() if value is not None})
        if "space" not in config_dict:
            raise ValueError(f"Configuration file '{config_fp}' does not specify a space.")
        space = config_dict["space"]
        if (isinstance(space, str) and not space.lstrip().startswith("{")
                and not Path(space).is_absolute()):
            relative = Path(config_fp).parent / space
            try:
                if relative.is_file():
                    config_dict["space"] = relative
            except OSError:
                pass
        return cls(**config_dict)

    def to_dict(self) -> dict:
        """Convert the configuration to a dictionary, without the output location."""
        return {
            "space": self.space.to_dict(),
            "suites": list(self.suites),
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
            "grid": self.grid,
        }
