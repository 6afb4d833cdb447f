"""Reading space specifications from files.

Three formats are supported:

- ``json-spec``: a JSON object ``{"kind": ..., **parameters}``.
- ``distance-matrix-csv``: a CSV file with a header row of labels and a
  symmetric body of distances.
- ``tree-edge-list``: lines ``u v weight`` separated by whitespace; empty
  lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional, Union

import jsonschema
import polars as pl

from metricat.errors import SpaceParseError, SpaceValidationError
from metricat.provider import create_space
from metricat.spaces.matrix import DistanceMatrixSpace
from metricat.spaces.tree import MetricTreeSpace
from metricat.spacespec import SpaceSpec
from metricat.validation import validate_space_dict

logger = logging.getLogger(__name__)

INGEST_FORMATS = ("json-spec", "distance-matrix-csv", "tree-edge-list")


def guess_format(path: Union[str, Path]) -> str:
    """Guess the format of a space file from its suffix."""
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "json-spec"
    if suffix == ".csv":
        return "distance-matrix-csv"
    return "tree-edge-list"


def ingest_space(path: Union[str, Path], file_format: Optional[str] = None) -> SpaceSpec:
    """Read and validate a space specification from a file.

    Parameters
    ----------
    path:
        File to read.
    file_format:
        One of ``"json-spec"``, ``"distance-matrix-csv"`` or ``"tree-edge-list"``.
        Guessed from the suffix by default.

    Returns
    -------
        The validated specification.

    Raises
    ------
    SpaceParseError
        If the file does not parse, with line and column.
    SpaceValidationError
        If the parsed data do not define a valid space, with the failed axiom and
        a witness.
    """
    if file_format is None:
        file_format = guess_format(path)
    if file_format not in INGEST_FORMATS:
        raise ValueError(f"Unknown space file format '{file_format}', use one of"
                         f" {INGEST_FORMATS}.")
    try:
        if file_format == "json-spec":
            spec = _read_json_spec(path)
        elif file_format == "distance-matrix-csv":
            spec = _read_matrix_csv(path)
        else:
            spec = _read_edge_list(path)
    except FileNotFoundError as fnf_error:
        raise FileNotFoundError(f"It appears '{path}' is not a valid filepath. Please provide"
                                f" a path to a {file_format} file.") from fnf_error
    logger.debug("Read space of kind '%s' from '%s'", spec.kind, path)
    return spec


def _read_json_spec(path) -> SpaceSpec:
    text = Path(path).read_text(encoding="utf-8")
    try:
        space_dict = json.loads(text)
    except json.JSONDecodeError as err:
        raise SpaceParseError(f"Cannot parse '{path}' as JSON: {err.msg}.", line=err.lineno,
                              column=err.colno) from err
    if not isinstance(space_dict, dict):
        raise SpaceParseError(f"File '{path}' should contain a JSON object.", line=1, column=1)
    try:
        validate_space_dict(space_dict)
    except jsonschema.ValidationError as err:
        raise SpaceValidationError(f"Space specification in '{path}' is not valid:"
                                   f" {err.message}", axiom="schema") from err
    spec = SpaceSpec.from_dict(space_dict)
    create_space(spec)
    return spec


def _read_matrix_csv(path) -> SpaceSpec:
    try:
        raw = pl.read_csv(path, infer_schema_length=0, has_header=True)
    except (pl.exceptions.ComputeError, pl.exceptions.NoDataError) as err:
        raise SpaceParseError(f"Cannot parse '{path}' as CSV: {err}", line=None) from err
    labels = raw.columns
    if raw.height != len(labels):
        raise SpaceParseError(f"Distance matrix in '{path}' has {len(labels)} labels but"
                              f" {raw.height} rows.", line=raw.height + 1)
    numbers = raw.select(pl.all().str.strip_chars().cast(pl.Float64, strict=False))
    for i_col, label in enumerate(labels):
        bad_rows = numbers[label].is_null().arg_true()
        if len(bad_rows) > 0:
            i_row = int(bad_rows[0])
            raise SpaceParseError(f"Cannot read distance '{raw[label][i_row]}' in column"
                                  f" '{label}' of '{path}'.", line=i_row + 2, column=i_col + 1)
    space = DistanceMatrixSpace(numbers.to_numpy(), labels)
    return SpaceSpec.from_dict(space.to_dict())


def _read_edge_list(path) -> SpaceSpec:
    edges = []
    with open(path, "r", encoding="utf-8") as handle:
        for i_line, line in enumerate(handle, start=1):
            content = line.split("#", 1)[0]
            fields = content.split()
            if len(fields) == 0:
                continue
            if len(fields) != 3:
                raise SpaceParseError(f"Expected 'u v weight', got {len(fields)} fields.",
                                      line=i_line, column=1)
            try:
                weight = float(fields[2])
            except ValueError as err:
                raise SpaceParseError(f"Cannot read edge weight '{fields[2]}'.", line=i_line,
                                      column=content.rindex(fields[2]) + 1) from err
            edges.append([fields[0], fields[1], weight])
    space = MetricTreeSpace(edges)
    return SpaceSpec.from_dict(space.to_dict())
