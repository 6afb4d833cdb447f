"""Module serving as the basis for all metricat example spaces.

The base module contains the ``BaseSpace`` class, which is the base class for
all spaces, and the ``metaspace()`` decorator, which sets the class attributes
of a space.

A space computes distances between its points. Depending on the space it can
also produce exact midpoints, geodesics and random points. The ``handle()``
method collects these into a :class:`~metricat.handle.SpaceHandle`, which is
what all checks work on.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from copy import deepcopy
from typing import Any, Iterator, Optional

import numpy as np

from metricat.curve import Curve
from metricat.handle import SpaceHandle


class BaseSpace(ABC):
    """Abstract base class to define a metric space.

    All spaces should be derived from this class, and should implement the
    following methods:
    :meth:`~distance`,
    :meth:`~_param_dict`,
    :meth:`~_param_schema`,
    :meth:`~default_space`
    and ``__init__``.

    Spaces with exact midpoints, geodesics or a sampler set the corresponding
    class attribute and override :meth:`~midpoint`, :meth:`~geodesic` or
    :meth:`~sample`.
    """

    kind: str = "unknown"
    """The identifier of the space kind"""
    provenance: str = "builtin"
    """Which plugin provides the space or builtin"""
    version: str = "1.0"
    """Version of the implemented space"""
    has_midpoints: bool = False
    """Whether the space has an exact midpoint oracle"""
    has_geodesics: bool = False
    """Whether the space has a geodesic oracle"""
    has_sampler: bool = True
    """Whether the space can draw random points"""
    complete: bool = True
    """Whether the space is complete"""

    @abstractmethod
    def distance(self, p: Any, q: Any) -> float:
        """Distance between two points."""

    def midpoint(self, p: Any, q: Any, epsilon: float = 0.0) -> Any:
        """Exact midpoint of two points; it is also an ε-midpoint for every ε."""
        raise NotImplementedError(f"Space '{self.kind}' has no midpoints.")

    def geodesic(self, p: Any, q: Any) -> Curve:
        """Geodesic from p to q, affinely parametrized on [0, 1]."""
        raise NotImplementedError(f"Space '{self.kind}' has no geodesics.")

    def sample(self, seed: int) -> Iterator[Any]:
        """Infinite iterator of random points."""
        raise NotImplementedError(f"Space '{self.kind}' has no sampler.")

    def contains(self, point: Any) -> bool:  # pylint: disable=unused-argument
        """Check whether a point belongs to the space."""
        return True

    def encode_point(self, point: Any) -> Any:
        """Convert a point to a JSON compatible value."""
        if isinstance(point, np.ndarray):
            return point.tolist()
        return point

    def candidate_curves(self, p: Any, q: Any) -> list[Curve]:
        """Curves from p to q that come close to the length metric."""
        if self.has_geodesics:
            return [self.geodesic(p, q)]
        return []

    @property
    def diameter(self) -> Optional[float]:
        """Upper bound on the diameter, if known."""
        return None

    def handle(self) -> SpaceHandle:
        """Collect the oracles of the space into a handle."""
        return SpaceHandle(
            distance=self.distance,
            midpoint_oracle=self.midpoint if self.has_midpoints else None,
            geodesic_oracle=self.geodesic if self.has_geodesics else None,
            sampler=self.sample if self.has_sampler else None,
            completeness_flag=self.complete,
            diameter_hint=self.diameter,
            contains=self.contains,
            candidate_oracle=self.candidate_curves,
            point_encoder=self.encode_point,
            kind=self.kind,
        )

    @property
    def _params_formatted(self) -> str:
        return "\n".join(
            f"\t- {param}: {value}" for param,
            value in self._param_dict().items()
        )

    def __str__(self) -> str:
        """Return an easy to read formatted string for the space."""
        return (
            f"- Kind: {self.kind}\n"
            f"- Provenance: {self.provenance}\n"
            f"- Parameters:\n"
            f"{self._params_formatted}\n"
        )

    @abstractmethod
    def _param_dict(self) -> dict:
        """Get dictionary with the parameters of the space."""

    def to_dict(self) -> dict:
        """Convert the space to a specification dictionary."""
        return {"kind": self.kind, **deepcopy(self._param_dict())}

    @classmethod
    def from_dict(cls, space_dict: dict) -> BaseSpace:
        """Create a space from a specification dictionary."""
        return cls(**{key: value for key, value in space_dict.items() if key != "kind"})

    @classmethod
    @abstractmethod
    def _param_schema(cls) -> dict:
        """Get schema for the parameters of the space."""

    @classmethod
    def schema(cls) -> dict:
        """Create sub-schema to validate a space specification."""
        return {
            "type": "object",
            "properties": {
                "kind": {"const": cls.kind},
                **cls._param_schema(),
            },
            "required": ["kind"],
            "additionalProperties": False,
        }

    @classmethod
    def matches_name(cls, name: str) -> bool:
        """Check whether the name matches the space.

        Parameters
        ----------
        name:
            Name to match, e.g. "metric_tree" or "MetricTreeSpace".

        Returns
        -------
            Whether the name matches.
        """
        assert cls.kind != "unknown", f"Internal error in class {cls.__name__}"
        return name in (cls.kind, cls.__name__)

    @classmethod
    @abstractmethod
    def default_space(cls) -> BaseSpace:
        """Get a space with default parameters."""
        return cls()


def metaspace(
        kind: Optional[str] = None,
        provenance: Optional[str] = None,
        version: Optional[str] = None,
        midpoints: Optional[bool] = None,
        geodesics: Optional[bool] = None,
        sampler: Optional[bool] = None,
        complete: Optional[bool] = None):
    """Decorate class to create a space with the right properties.

    Parameters
    ----------
    kind:
        The space kind that it implements, e.g. euclidean, metric_tree.
    provenance:
        Where the space came from, which package/plugin implemented it.
    version:
        Version of the space. Increment this when the specification format changes.
    midpoints:
        Whether the space has exact midpoints.
    geodesics:
        Whether the space has a geodesic oracle.
    sampler:
        Whether the space can draw random points.
    complete:
        Whether the space is complete.

    Returns
    -------
    cls:
        Class with the appropriate class variables.
    """
    def _wrap(cls):
        if kind is not None:
            cls.kind = kind
        if provenance is not None:
            cls.provenance = provenance
        if version is not None:
            cls.version = version
        if midpoints is not None:
            cls.has_midpoints = midpoints
        if geodesics is not None:
            cls.has_geodesics = geodesics
        if sampler is not None:
            cls.has_sampler = sampler
        if complete is not None:
            cls.complete = complete
        if cls.__doc__ is None:
            return cls
        cls.__doc__ = cls.__doc__.rstrip(" ")
        if not cls.__doc__.endswith("\n"):
            cls.__doc__ += "\n"
        cls.__doc__ += f"""
    Attributes
    ----------
    kind:
        {cls.kind}
    version:
        {cls.version}
    provenance:
        {cls.provenance}
    """
        return cls

    return _wrap
