"""Dominating K_t-models of small graphs: search, verification, constructions and sweeps."""

from __future__ import annotations

from .colouring import Colouring, chromatic_number, k_colour, stitch_colourings, verify_colouring
from .dominating_k4 import dominating_k4_constructor
from .graph import ContractionWitness, Graph, Separation, from_edges, parse_graph6, to_graph6
from .models import (
    DominatingModel,
    find_dominating_model,
    find_standard_model,
    induced_cycle_normalize,
    is_L_compatible,
    lift_contraction,
    singleton_normalize,
    verify_dominating_model,
    verify_standard_model,
)
from .subdivision import SubdivisionEmbedding, extract_k5_or_k5hat, find_subdivision, verify_subdivision

__all__ = [
    "Colouring",
    "ContractionWitness",
    "DominatingModel",
    "Graph",
    "Separation",
    "SubdivisionEmbedding",
    "chromatic_number",
    "dominating_k4_constructor",
    "extract_k5_or_k5hat",
    "find_dominating_model",
    "find_standard_model",
    "find_subdivision",
    "from_edges",
    "induced_cycle_normalize",
    "is_L_compatible",
    "k_colour",
    "lift_contraction",
    "parse_graph6",
    "singleton_normalize",
    "stitch_colourings",
    "to_graph6",
    "verify_colouring",
    "verify_dominating_model",
    "verify_standard_model",
    "verify_subdivision",
]
