"""Example spaces with exact oracles."""

from metricat.spaces.base import BaseSpace, metaspace
from metricat.spaces.circle import CircleSpace
from metricat.spaces.euclidean import EuclideanSpace
from metricat.spaces.matrix import DistanceMatrixSpace
from metricat.spaces.product import ProductWithLineSpace
from metricat.spaces.punctured import PuncturedPlane
from metricat.spaces.tree import MetricTreeSpace, TreePoint

__all__ = [
    "BaseSpace", "metaspace", "CircleSpace", "EuclideanSpace", "DistanceMatrixSpace",
    "ProductWithLineSpace", "PuncturedPlane", "MetricTreeSpace", "TreePoint",
]
