"""Module implementing space providers.

Space providers make space kinds available by name.
See pyproject.toml on how the builtin space provider is registered.
"""

from __future__ import annotations

from abc import ABC
from typing import Union

try:
    from importlib_metadata import EntryPoint, entry_points
except ImportError:
    from importlib.metadata import EntryPoint, entry_points  # type: ignore

from metricat.handle import SpaceHandle
from metricat.spaces.base import BaseSpace
from metricat.spaces.circle import CircleSpace
from metricat.spaces.euclidean import EuclideanSpace
from metricat.spaces.matrix import DistanceMatrixSpace
from metricat.spaces.product import ProductWithLineSpace
from metricat.spaces.punctured import PuncturedPlane
from metricat.spaces.tree import MetricTreeSpace
from metricat.spacespec import SpaceSpec


class BaseSpaceProvider(ABC):
    """Base class for all space providers.

    A space provider is a class that provides a set of space kinds that
    checks can be run on.
    """

    name = ""
    version = ""
    spaces: list[type[BaseSpace]] = []

    def __init__(self):
        # Perform internal consistency check.
        assert len(self.name) > 0
        assert len(self.version) > 0
        assert len(self.spaces) > 0

    @property
    def all_kinds(self) -> list[str]:
        """Return list of available space kinds."""
        return [space_class.kind for space_class in self.spaces]


class BuiltinSpaceProvider(BaseSpaceProvider):
    """Space provider that includes the builtin example spaces."""

    name = "builtin"
    version = "1.0"
    spaces = [
        EuclideanSpace, CircleSpace, PuncturedPlane, MetricTreeSpace, ProductWithLineSpace,
        DistanceMatrixSpace,
    ]


class SpaceProviderList():
    """List of space providers with functionality to create spaces.

    Parameters
    ----------
    space_providers:
        One or more space providers, that are denoted either with a string ("builtin"),
        SpaceProvider (BuiltinSpaceProvider()) or SpaceProvider type (BuiltinSpaceProvider).
        The order in which providers are included matters: if two providers
        implement the same kind, only the first is used. None selects all
        installed providers.
    """

    def __init__(
            self,
            space_providers: Union[
                None, str, type[BaseSpaceProvider], BaseSpaceProvider,
                list[Union[str, type[BaseSpaceProvider], BaseSpaceProvider]]] = None):
        if space_providers is None:
            self.space_packages = _get_all_provider_list()
            return

        if isinstance(space_providers, (str, type, BaseSpaceProvider)):
            space_providers = [space_providers]
        self.space_packages = [get_space_provider(provider) for provider in space_providers]

    @property
    def spaces(self) -> list[type[BaseSpace]]:
        """All space classes, in provider order."""
        return [space_class for provider in self.space_packages
                for space_class in provider.spaces]

    def find_space(self, kind: str) -> type[BaseSpace]:
        """Find a space class from its kind or class name.

        Parameters
        ----------
        kind:
            Name of the space, e.g. "metric_tree" or "MetricTreeSpace".

        Returns
        -------
            The space class.
        """
        for space_class in self.spaces:
            if space_class.matches_name(kind):
                return space_class
        raise ValueError(f"Cannot find space with kind '{kind}', available:"
                         f" {[space_class.kind for space_class in self.spaces]}.")

    def create(self, space_spec: Union[SpaceSpec, dict, str]) -> BaseSpace:
        """Create a space from its specification.

        Parameters
        ----------
        space_spec:
            Specification of the space, see :meth:`SpaceSpec.parse`. A bare
            kind without parameters gives the default space of that kind.

        Returns
        -------
            A space according to the specification.
        """
        spec = SpaceSpec.parse(space_spec)
        space_class = self.find_space(spec.kind)
        if len(spec.parameters) == 0:
            return space_class.default_space()
        return space_class.from_dict(spec.to_dict())


def _get_all_providers() -> dict[str, EntryPoint]:
    """Get all available providers."""
    return {
        entry.name: entry
        for entry in entry_points(group="metricat.space_provider")
    }


def _get_all_provider_list() -> list[BaseSpaceProvider]:
    providers = [p.load()() for p in _get_all_providers().values()]
    if len(providers) == 0:
        # Running from a source tree without installed entry points.
        providers = [BuiltinSpaceProvider()]
    return providers


def get_space_provider(provider: Union[str, type[BaseSpaceProvider],
                                       BaseSpaceProvider] = "builtin") -> BaseSpaceProvider:
    """Get a space provider.

    Parameters
    ----------
    provider:
        Name, class or class type of the provider to be used.

    Returns
    -------
    BaseSpaceProvider:
        The space provider that was found.
    """
    if isinstance(provider, BaseSpaceProvider):
        return provider
    if isinstance(provider, type):
        return provider()
    if provider == BuiltinSpaceProvider.name:
        return BuiltinSpaceProvider()

    all_providers = _get_all_providers()
    try:
        return all_providers[provider].load()()
    except KeyError as exc:
        raise ValueError(f"Cannot find space provider with name '{provider}'.") from exc


def create_space(space_spec: Union[SpaceSpec, dict, str, BaseSpace]) -> BaseSpace:
    """Create a space from a specification with all installed providers."""
    if isinstance(space_spec, BaseSpace):
        return space_spec
    return SpaceProviderList().create(space_spec)


def make_space(space_spec: Union[SpaceSpec, dict, str, BaseSpace]) -> SpaceHandle:
    """Create the handle of a space from its specification.

    Parameters
    ----------
    space_spec:
        Specification of the space, e.g. ``{"kind": "euclidean", "n": 2}``.

    Returns
    -------
        Handle with the oracles of the space.

    Raises
    ------
    SpaceValidationError
        If the parameters do not define a metric space, naming the failed axiom
        and a witness.
    """
    return create_space(space_spec).handle()
