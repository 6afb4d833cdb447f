"""The validation module contains the JSON schemas of space specifications and reports.

Reports are validated before they are written, so that their structure can be
relied on by other tools. The version of the report format is stored in the
field ``schema_version``.
"""

from __future__ import annotations

from copy import deepcopy
from typing import Optional

try:
    from importlib_metadata import entry_points
except ImportError:
    from importlib.metadata import entry_points  # type: ignore

import jsonschema

from metricat.provider import get_space_provider

REPORT_SCHEMA_VERSION = "1.0"

STATUS_SCHEMA = {"enum": ["PASS", "FAIL", "INCONCLUSIVE", "SKIPPED"]}

NUMBER_OR_SPECIAL = {"anyOf": [{"type": "number"},
                               {"enum": ["inf", "-inf", "nan"]}]}

VERDICT_SCHEMA = {
    "type": "object",
    "properties": {
        "status": STATUS_SCHEMA,
        "worst_violation": NUMBER_OR_SPECIAL,
        "witness": {"type": "array", "items": {"type": "object"}},
        "details": {"type": "object"},
    },
    "required": ["status", "worst_violation", "witness", "details"],
    "if": {"properties": {"status": {"const": "FAIL"}}},
    "then": {"properties": {"witness": {"minItems": 1}}},
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": f"https://metricat.readthedocs.io/report/{REPORT_SCHEMA_VERSION}/report",
    "type": "object",
    "properties": {
        "schema_version": {"const": REPORT_SCHEMA_VERSION},
        "toolkit": {
            "type": "object",
            "properties": {
                "name": {"const": "metricat"},
                "version": {"type": "string"},
            },
            "required": ["name", "version"],
        },
        "space": {
            "type": "object",
            "properties": {"kind": {"type": "string"}},
            "required": ["kind"],
        },
        "config": {
            "type": "object",
            "properties": {
                "suites": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                "samples": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer"},
                "tol": {"type": "number", "exclusiveMinimum": 0},
                "grid": {"type": "integer", "minimum": 2},
            },
            "required": ["suites", "samples", "seed", "tol"],
        },
        "suites": {
            "type": "object",
            "additionalProperties": VERDICT_SCHEMA,
        },
        "stats": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "properties": {"distance_evaluations": {"type": "integer", "minimum": 0}},
                "required": ["distance_evaluations"],
            },
        },
    },
    "required": ["schema_version", "toolkit", "space", "config", "suites", "stats"],
}


def validate_report_dict(report_dict: dict):
    """Validate a JSON dictionary of a report as it would be written to a file.

    Make sure that the report has been converted with ``Report.to_dict``, so
    that numpy values, tuples and non-finite floats have been converted.

    Arguments
    ---------
    report_dict:
        Dictionary containing the report.
    """
    jsonschema.validate(report_dict, REPORT_SCHEMA)


def create_space_schema(packages: Optional[list[str]] = None) -> dict:
    """Create JSON Schema to validate a space specification.

    Arguments
    ---------
    packages:
        List of space provider names to create the schema with, all installed
        providers by default.

    Returns
    -------
    schema:
        Schema accepting the specification of any space in the providers.
    """
    if packages is None:
        packages = [entry.name for entry in entry_points(group="metricat.space_provider")]
        packages = packages or ["builtin"]
    defs: list[dict] = []
    for package_name in packages:
        pkg = get_space_provider(package_name)
        for space in pkg.spaces:
            defs.append(space.schema())
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": "https://metricat.readthedocs.io/space/1.0/space",
        "anyOf": defs,
    }


def validate_space_dict(space_dict: dict, packages: Optional[list[str]] = None):
    """Validate a space specification ``{"kind": ..., **parameters}``."""
    jsonschema.validate(space_dict, create_space_schema(packages))


def report_schema() -> dict:
    """Copy of the report schema."""
    return deepcopy(REPORT_SCHEMA)
