"""Finite metric spaces given by a distance matrix."""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

import numpy as np

from metricat.errors import SpaceValidationError
from metricat.spaces.base import BaseSpace, metaspace
from metricat.verdict import EXACT_TOL


def validate_distance_matrix(matrix: np.ndarray, labels: Sequence[str],
                             tol: float = EXACT_TOL) -> None:
    """Check that a matrix is a metric on the labels.

    Raises
    ------
    SpaceValidationError
        Naming the failed axiom and the witness labels.
    """
    n_points = len(labels)
    if matrix.shape != (n_points, n_points):
        raise SpaceValidationError(f"Distance matrix has shape {matrix.shape}, expected"
                                   f" ({n_points}, {n_points}).", axiom="shape")
    if not np.all(np.isfinite(matrix)):
        i, j = np.argwhere(~np.isfinite(matrix))[0]
        raise SpaceValidationError(f"Distance between '{labels[i]}' and '{labels[j]}' is not"
                                   " finite.", axiom="finite", witness=(labels[i], labels[j]))
    scale = max(1.0, float(matrix.max(initial=0.0)))
    diagonal = np.abs(np.diag(matrix))
    if diagonal.max(initial=0.0) > tol * scale:
        i = int(np.argmax(diagonal))
        raise SpaceValidationError(f"Distance from '{labels[i]}' to itself is {matrix[i, i]}.",
                                   axiom="identity", witness=(labels[i],))
    if matrix.min(initial=0.0) < -tol * scale:
        i, j = np.unravel_index(np.argmin(matrix), matrix.shape)
        raise SpaceValidationError(f"Distance between '{labels[i]}' and '{labels[j]}' is"
                                   f" negative: {matrix[i, j]}.", axiom="positivity",
                                   witness=(labels[i], labels[j]))
    asymmetry = np.abs(matrix - matrix.T)
    if asymmetry.max(initial=0.0) > tol * scale:
        i, j = np.unravel_index(np.argmax(asymmetry), matrix.shape)
        raise SpaceValidationError(f"Distance matrix is not symmetric at ('{labels[i]}',"
                                   f" '{labels[j]}').", axiom="symmetry",
                                   witness=(labels[i], labels[j]))
    # slack[i, k, j] = d(i, k) + d(k, j) - d(i, j)
    slack = matrix[:, :, None] + matrix[None, :, :] - matrix[:, None, :]
    if slack.min(initial=0.0) < -tol * scale:
        i, k, j = np.unravel_index(np.argmin(slack), slack.shape)
        raise SpaceValidationError(
            f"Triangle inequality fails: d({labels[i]}, {labels[j]}) = {matrix[i, j]} >"
            f" d({labels[i]}, {labels[k]}) + d({labels[k]}, {labels[j]}) ="
            f" {matrix[i, k] + matrix[k, j]}.", axiom="triangle",
            witness=tuple(sorted((labels[i], labels[k], labels[j]), key=labels.index)))


@metaspace(kind="distance_matrix", version="1.0")
class DistanceMatrixSpace(BaseSpace):
    """Finite metric space whose points are labels.

    The space has no midpoints and no geodesics; the sampler draws labels
    uniformly.

    Parameters
    ----------
    matrix:
        Symmetric matrix of distances with zero diagonal.
    labels:
        Names of the points, "1", "2", ... by default.
    """

    def __init__(self, matrix: Sequence[Sequence[float]], labels: Optional[Sequence[str]] = None):
        self.matrix = np.asarray(matrix, dtype=float)
        if labels is None:
            labels = [str(i + 1) for i in range(len(self.matrix))]
        self.labels = [str(label) for label in labels]
        if len(set(self.labels)) != len(self.labels):
            raise SpaceValidationError("Labels of the distance matrix are not unique.",
                                       axiom="labels")
        validate_distance_matrix(self.matrix, self.labels)
        self._index = {label: i for i, label in enumerate(self.labels)}

    def distance(self, p, q) -> float:
        return float(self.matrix[self._index[str(p)], self._index[str(q)]])

    def sample(self, seed: int) -> Iterator[str]:
        rng = np.random.default_rng(seed)
        while True:
            yield self.labels[int(rng.integers(len(self.labels)))]

    def contains(self, point) -> bool:
        return str(point) in self._index

    @property
    def diameter(self):
        return float(self.matrix.max(initial=0.0))

    def _param_dict(self):
        return {"matrix": self.matrix.tolist(), "labels": list(self.labels)}

    @classmethod
    def _param_schema(cls):
        return {
            "matrix": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
            "labels": {"type": "array", "items": {"type": "string"}},
        }

    @classmethod
    def default_space(cls):
        return cls([[0.0, 1.0], [1.0, 0.0]], ["1", "2"])
