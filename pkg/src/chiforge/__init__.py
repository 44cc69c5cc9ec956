"""Exact structural graph algorithms for chi-binding questions on small graphs."""

from .coloring import (
    BudgetExceeded,
    ColoringCertificate,
    chromatic_number,
    chromatic_number_weighted,
    clique_number,
    clique_number_weighted,
    is_critical,
    is_weight_minimal,
)
from .decompose import Decomposition, decompose_qp4, find_clique_separator_of_modules, is_prime
from .graph import Graph, complement, expansion, induced, join, parse_graph6, write_graph6
from .patterns import ZOO, build_qf, find_induced, has_odd_hole, is_perfect

__all__ = [
    "BudgetExceeded", "ColoringCertificate", "Decomposition", "Graph", "ZOO",
    "build_qf", "chromatic_number", "chromatic_number_weighted", "clique_number",
    "clique_number_weighted", "complement", "decompose_qp4", "expansion",
    "find_clique_separator_of_modules", "find_induced", "has_odd_hole", "induced",
    "is_critical", "is_perfect", "is_prime", "is_weight_minimal", "join",
    "parse_graph6", "write_graph6",
]
