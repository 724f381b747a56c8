"""
hpzo Oracles - function-value oracles, query accounting and the test-function suite.
"""

from .problems import ProblemSpec, QueryLedger, Regime, evaluate, gradient_reference, level_radius
from .suite import PROBLEM_REGISTRY, build_problem, list_problems

__all__ = [
    "ProblemSpec",
    "QueryLedger",
    "Regime",
    "evaluate",
    "gradient_reference",
    "level_radius",
    "PROBLEM_REGISTRY",
    "build_problem",
    "list_problems",
]
