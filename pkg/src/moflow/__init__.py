"""Supported efficient flows of multi-objective integer min-cost flow problems."""

from .network import (
    Arc, Dominance, Network, ParseError, dominates, format_instance, outcome, parse_instance,
    read_instance, validate,
)
from .scalar import ScalarSolution, solve, solve_lexicographic, verify_optimal
from .aof import enumerate_optimal_flows, zero_residual
from .bi import SupportedFlow, all_supported_flows_bi, extreme_supported_points
from .multi import all_supported_flows, compute_upper_image, facet_adjacency

__all__ = [
    "Arc", "Dominance", "Network", "ParseError", "dominates", "format_instance", "outcome",
    "parse_instance", "read_instance", "validate",
    "ScalarSolution", "solve", "solve_lexicographic", "verify_optimal",
    "enumerate_optimal_flows", "zero_residual",
    "SupportedFlow", "all_supported_flows_bi", "extreme_supported_points",
    "all_supported_flows", "compute_upper_image", "facet_adjacency",
]
