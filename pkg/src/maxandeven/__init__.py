"""Promise solvers for Max-And-Even, Max-DiCut-Cut and Max-DiCut-Acyclic.

Everything numeric is exact: LP values and objectives are ``fractions.Fraction``.
"""

from maxandeven.model import (
    BoolAssignment,
    Clause,
    Instance,
    Literal,
    NormalizationReport,
    TernaryAssignment,
    clause_min,
    normalize,
    objective_value,
    strong_count,
    strong_satisfied,
    weak_count,
    weak_satisfied,
)
from maxandeven.lp import LinearProgram, LpSolution, build_lp, simplex_solve
from maxandeven.halfint import half_integral_solve
from maxandeven.rounding import (
    Solution,
    derandomized_round,
    expected_weak_count,
    randomized_round,
    solve_max_and_even,
)
from maxandeven.graphs import (
    AcyclicResult,
    CutResult,
    Digraph,
    VertexOrdering,
    digraph_to_instance,
    solve_dicut_acyclic,
    solve_dicut_cut,
)

__version__ = "0.1.0"

__all__ = [
    "AcyclicResult",
    "BoolAssignment",
    "Clause",
    "CutResult",
    "Digraph",
    "Instance",
    "LinearProgram",
    "Literal",
    "LpSolution",
    "NormalizationReport",
    "Solution",
    "TernaryAssignment",
    "VertexOrdering",
    "build_lp",
    "clause_min",
    "derandomized_round",
    "digraph_to_instance",
    "expected_weak_count",
    "half_integral_solve",
    "normalize",
    "objective_value",
    "randomized_round",
    "simplex_solve",
    "solve_dicut_acyclic",
    "solve_dicut_cut",
    "solve_max_and_even",
    "strong_count",
    "strong_satisfied",
    "weak_count",
    "weak_satisfied",
]
