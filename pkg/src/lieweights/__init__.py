"""Weight systems, weight graphs and 2-step solvable extensions of nilpotent Lie algebras."""

from .graph import SimpleGraph, complement, sum_graph, weight_graph
from .lie import LieAlgebra, bracket, center, derived_series, lower_central_series, semidirect_product, validate
from .solvability import analyze, determination_check, is_two_step_subtorus, oracle_two_step
from .torus import Torus, WeightSystem, diagonal_torus, fundamental_torus, weight_system

__version__ = "0.1.0"

__all__ = [
    "LieAlgebra", "SimpleGraph", "Torus", "WeightSystem",
    "analyze", "bracket", "center", "complement", "derived_series", "determination_check",
    "diagonal_torus", "fundamental_torus", "is_two_step_subtorus", "lower_central_series",
    "oracle_two_step", "semidirect_product", "sum_graph", "validate", "weight_graph", "weight_system",
]
