"""Symbolic dynamic-epistemic model checking for theory-of-mind benchmarks.

The checker decides VALID? queries over knowledge structures written in an
SMCDEL-style language; the pipeline delegates benchmark items to an LLM,
executes the formulations it returns, and scores the run.
"""

from .bdd import BACKEND as BDD_BACKEND
from .checker import QueryResult, check_valid, check_valid_explicit, run_query
from .formula import Scene, Verdict, validate_scene
from .parser import parse_formula, parse_scene, print_formula, print_scene

__version__ = "0.1.0"

__all__ = [
    "BDD_BACKEND",
    "QueryResult",
    "Scene",
    "Verdict",
    "check_valid",
    "check_valid_explicit",
    "parse_formula",
    "parse_scene",
    "print_formula",
    "print_scene",
    "run_query",
    "validate_scene",
]
