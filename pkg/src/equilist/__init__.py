"""Strongly equitable list coloring of class-B graphs."""

from .coloring import Instance, SEReport, check_lists, check_proper, check_SE, mod_star
from .digraph import PartialState, accessible_colors, build_H, forward_closure, is_movable, path_to_light
from .engine import Potential, TraceEvent, improve, move_vertex, potential, replay, shift_witnesses
from .errors import (
    EquilistError,
    HypothesisViolated,
    IllegalMove,
    InternalInvariantViolation,
    InvalidInstance,
    NotAccessible,
    UnsupportedParameter,
)
from .generators import gen_lists, gen_stacked_planar, gen_subdivision
from .graph import BMembership, Graph, contains_K33, cut_edges, delete_vertex, min_degree_vertex, verify_class_B
from .oracle import OracleResult, oracle_se_color
from .solver import SolveResult, se_color, solve

__all__ = [
    "BMembership", "EquilistError", "Graph", "HypothesisViolated", "IllegalMove", "Instance",
    "InternalInvariantViolation", "InvalidInstance", "NotAccessible", "OracleResult", "PartialState",
    "Potential", "SEReport", "SolveResult", "TraceEvent", "UnsupportedParameter",
    "accessible_colors", "build_H", "check_SE", "check_lists", "check_proper", "contains_K33",
    "cut_edges", "delete_vertex", "forward_closure", "gen_lists", "gen_stacked_planar",
    "gen_subdivision", "improve", "is_movable", "min_degree_vertex", "mod_star", "move_vertex",
    "oracle_se_color", "path_to_light", "potential", "replay", "se_color", "shift_witnesses",
    "solve", "verify_class_B",
]
