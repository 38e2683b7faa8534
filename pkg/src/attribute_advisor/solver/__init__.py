from .base import GainFunction, SolveRequest, SolveResult, SolveStats, gains_equal
from .binary import SOLVERS, get_solver, solve_baseline, solve_ggmfa, solve_igmfa
from .ordinal import (
    BinaryLiftedGain,
    OrdinalGainFunction,
    OrdinalSolveRequest,
    solve_ggmfa_ordinal,
    solve_ordinal_bruteforce,
)

__all__ = [
    "SOLVERS",
    "BinaryLiftedGain",
    "GainFunction",
    "OrdinalGainFunction",
    "OrdinalSolveRequest",
    "SolveRequest",
    "SolveResult",
    "SolveStats",
    "gains_equal",
    "get_solver",
    "solve_baseline",
    "solve_ggmfa",
    "solve_ggmfa_ordinal",
    "solve_igmfa",
    "solve_ordinal_bruteforce",
]
