"""Hamiltonian-cycle decision and search for directed graphs."""

from .feasibility import Verdict
from .generators import FamilyStats, GeneratorSpec, family_statistics, generate
from .graph import Edge, Graph, GraphFormatError, JournalError
from .oracle import brute_force_find, enumerate_all, validate_cycle
from .pruning import AnalysisReport, Direction, analyze
from .search import SolveResult, SolverOptions, solve
from .stages import StageConfig, auto_budget, stage_config

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "Direction",
    "Edge",
    "FamilyStats",
    "GeneratorSpec",
    "Graph",
    "GraphFormatError",
    "JournalError",
    "SolveResult",
    "SolverOptions",
    "StageConfig",
    "Verdict",
    "analyze",
    "auto_budget",
    "brute_force_find",
    "enumerate_all",
    "family_statistics",
    "generate",
    "solve",
    "stage_config",
    "validate_cycle",
    "__version__",
]
