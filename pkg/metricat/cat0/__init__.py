"""Checks of the CAT(0) condition and its consequences."""

from metricat.cat0.convexity import (
    approx_midpoint_bound,
    approx_midpoint_closeness_check,
    approx_midpoint_delta,
    busemann_midpoint_check,
    convexity_check,
)
from metricat.cat0.flatness import FlatnessReport, flatness_detect
from metricat.cat0.fourpoint import Subembedding, find_subembedding, four_point_scan
from metricat.cat0.projection import ConvexSet, ProjectionResult, project_to_convex
from metricat.cat0.triangle import cat0_triangle_check, equivalent_condition_check, gluing_check

__all__ = [
    "approx_midpoint_bound", "approx_midpoint_closeness_check", "approx_midpoint_delta",
    "busemann_midpoint_check", "convexity_check", "FlatnessReport", "flatness_detect",
    "Subembedding", "find_subembedding", "four_point_scan", "ConvexSet", "ProjectionResult",
    "project_to_convex", "cat0_triangle_check", "equivalent_condition_check", "gluing_check",
]
