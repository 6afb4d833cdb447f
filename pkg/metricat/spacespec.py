"""Module for space specifications."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Union

from metricat.spaces.base import BaseSpace


@dataclass
class SpaceSpec():
    """Specification that determines which space is created.

    It has the following attributes:
    - kind: Which space kind is chosen, e.g. "euclidean" or "metric_tree".
    - parameters: The parameters of the space as defined by the kind.
    """

    kind: str
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.kind, str) or len(self.kind) == 0:
            raise ValueError(f"Space kind should be a nonempty string, got {self.kind!r}.")
        if "kind" in self.parameters:
            raise ValueError("Parameters of a space specification cannot contain 'kind'.")

    @classmethod
    def parse(cls, space_spec: Union[dict, str, BaseSpace, SpaceSpec]) -> SpaceSpec:
        """Create a SpaceSpec instance from a variety of inputs.

        Parameters
        ----------
        space_spec:
            Specification dictionary ``{"kind": ..., **parameters}``, a JSON string
            of such a dictionary, a bare kind name, a space or a SpaceSpec.

        Returns
        -------
            An instantiated version of the space_spec that has the SpaceSpec type.

        Raises
        ------
        TypeError
            If the input has the wrong type and cannot be parsed.
        """
        if isinstance(space_spec, SpaceSpec):
            return space_spec
        if isinstance(space_spec, BaseSpace):
            return cls.from_dict(space_spec.to_dict())
        if isinstance(space_spec, str):
            if space_spec.lstrip().startswith("{"):
                return cls.from_dict(json.loads(space_spec))
            return cls(space_spec)
        if isinstance(space_spec, dict):
            return cls.from_dict(space_spec)
        raise TypeError("Error parsing space specification of unknown type "
                        f"'{type(space_spec)}' with value '{space_spec}'")

    @classmethod
    def from_dict(cls, space_dict: dict[str, Any]) -> SpaceSpec:
        """Create a specification from ``{"kind": ..., **parameters}``."""
        if "kind" not in space_dict:
            raise ValueError(f"Space specification {space_dict} has no 'kind'.")
        return cls(space_dict["kind"],
                   {key: value for key, value in space_dict.items() if key != "kind"})

    def to_dict(self) -> dict:
        """Convert the specification to ``{"kind": ..., **parameters}``."""
        return {"kind": self.kind, **self.parameters}
