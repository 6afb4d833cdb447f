"""Reports of check runs and their serialization."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import TYPE_CHECKING, Optional, Union

try:  # Python < 3.10 (backport)
    from importlib_metadata import version
except ImportError:
    from importlib.metadata import version  # type: ignore [assignment]

import numpy as np

from metricat.errors import ReportIOError
from metricat.handle import SpaceHandle
from metricat.validation import REPORT_SCHEMA_VERSION, validate_report_dict
from metricat.verdict import CheckVerdict, Status

if TYPE_CHECKING:
    from metricat.config import SuiteConfig


def _jsonify(data):
    if isinstance(data, (list, tuple)):
        return [_jsonify(d) for d in data]
    if isinstance(data, dict):
        return {str(key): _jsonify(value) for key, value in data.items()}
    if isinstance(data, (bool, np.bool_)):
        return bool(data)
    if isinstance(data, np.integer):
        return int(data)
    if isinstance(data, (float, np.floating)):
        if math.isfinite(data):
            return float(data)
        return str(float(data))
    if isinstance(data, np.ndarray):
        return _jsonify(data.tolist())
    if isinstance(data, Status):
        return data.value
    return data


def _encode_points(data, space: SpaceHandle):
    """Replace the points of a space inside a witness by their JSON encoding."""
    if isinstance(data, dict):
        return {key: _encode_points(value, space) for key, value in data.items()}
    if isinstance(data, list):
        return [_encode_points(value, space) for value in data]
    if isinstance(data, (str, int, float, bool, np.number)) or data is None:
        return data
    try:
        is_point = space.contains is not None and space.contains(data)
    except (TypeError, ValueError, AttributeError, IndexError):
        is_point = False
    if is_point:
        return space.encode(data)
    if isinstance(data, tuple):
        return [_encode_points(value, space) for value in data]
    return data


class Report():
    """Outcome of a run of check suites.

    Parameters
    ----------
    config:
        The configuration that was run.
    space:
        Handle of the checked space, used to encode witness points.
    suites:
        Verdict per suite, in the order of the configuration.
    stats:
        Evaluation counts per suite.
    wall_time:
        Run time in seconds. It is shown in the text summary only, so that JSON
        reports of identical runs are identical.
    """

    def __init__(self, config: SuiteConfig, space: SpaceHandle, suites: dict[str, CheckVerdict],
                 stats: dict[str, dict], wall_time: float = 0.0):
        self.config = config
        self.space = space
        self.suites = suites
        self.stats = stats
        self.wall_time = wall_time

    @property
    def exit_code(self) -> int:
        """1 if a suite failed, else 2 if no suite passed, else 0."""
        statuses = [verdict.status for verdict in self.suites.values()]
        if Status.FAIL in statuses:
            return 1
        if Status.PASS not in statuses:
            return 2
        return 0

    def to_dict(self) -> dict:
        """Convert the report to a JSON compatible dictionary."""
        suites = {}
        for name, verdict in self.suites.items():
            verdict_dict = verdict.to_dict()
            verdict_dict["witness"] = _encode_points(verdict_dict["witness"], self.space)
            suites[name] = verdict_dict
        return _jsonify({
            "schema_version": REPORT_SCHEMA_VERSION,
            "toolkit": {"name": "metricat", "version": version("metricat")},
            "space": self.config.space.to_dict(),
            "config": self.config.to_dict(),
            "suites": suites,
            "stats": self.stats,
        })

    def to_json(self) -> str:
        """Serialize the report to JSON, after validating it against the schema."""
        report_dict = self.to_dict()
        validate_report_dict(report_dict)
        return json.dumps(report_dict, indent=4)

    def text_summary(self) -> str:
        """One line per suite: name, status, worst violation and number of witnesses."""
        lines = []
        width = max(len(name) for name in self.suites) if self.suites else 0
        for name, verdict in self.suites.items():
            lines.append(f"{name:<{width}} {verdict.status.value:<12} "
                         f"{verdict.worst_violation:.3e} {len(verdict.witness)}")
        lines.append(f"Finished in {self.wall_time:.2f} s.")
        return "\n".join(lines)

    def save(self, path: Union[str, Path], file_format: str = "json") -> None:
        """Write the report to a file."""
        emit_report(self, file_format, path)

    def __str__(self) -> str:
        """Return the text summary."""
        return self.text_summary()


def emit_report(report: Report, file_format: str = "json",
                path: Optional[Union[str, Path]] = None) -> str:
    """Serialize a report and optionally write it to a file.

    Parameters
    ----------
    report:
        The report to serialize.
    file_format:
        ``"json"`` for the versioned JSON format, ``"text"`` for a one line per
        suite summary.
    path:
        File to write to, nothing is written if None.

    Returns
    -------
        The serialized report.

    Raises
    ------
    ReportIOError
        If the file cannot be written.
    """
    if file_format == "json":
        output = report.to_json()
    elif file_format == "text":
        output = report.text_summary()
    else:
        raise ValueError(f"Unknown report format '{file_format}', use 'json' or 'text'.")
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(output + "\n")
        except OSError as os_error:
            raise ReportIOError(f"Cannot write report to '{path}': {os_error.strerror}.",
                                path=path) from os_error
    return output
