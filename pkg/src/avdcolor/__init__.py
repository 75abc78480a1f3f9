"""Adjacent-vertex-distinguishing edge colouring: constructive pipeline, exact solver, bounds."""

from .coloring import (
    PartialEdgeColoring,
    available_colors,
    bad_vertices,
    color_set,
    indistinguishable_pairs,
    proper_edge_coloring,
    unused_graph,
    verify_avd,
    verify_proper,
)
from .errors import AvdError
from .exact import SearchConfig, avd_chromatic_number, brute_force_oracle, exists_avd_coloring, solve_avd
from .generators import generate
from .graph import DegreeClassification, MultiGraph, build_graph, classify_by_degree, isolated_edges
from .io import parse_edge_list, serialize_edge_list
from .montecarlo import MonteCarloReport, binomial_membership, monte_carlo_phase1
from .pipeline import PipelineParams, PipelineResult, avd_color_pipeline, lift_coloring, step1_contract

__all__ = [
    "AvdError",
    "DegreeClassification",
    "MonteCarloReport",
    "MultiGraph",
    "PartialEdgeColoring",
    "PipelineParams",
    "PipelineResult",
    "SearchConfig",
    "available_colors",
    "avd_chromatic_number",
    "avd_color_pipeline",
    "bad_vertices",
    "binomial_membership",
    "brute_force_oracle",
    "build_graph",
    "classify_by_degree",
    "color_set",
    "exists_avd_coloring",
    "generate",
    "indistinguishable_pairs",
    "isolated_edges",
    "lift_coloring",
    "monte_carlo_phase1",
    "parse_edge_list",
    "proper_edge_coloring",
    "serialize_edge_list",
    "solve_avd",
    "step1_contract",
    "unused_graph",
    "verify_avd",
    "verify_proper",
]

__version__ = "0.1.0"
