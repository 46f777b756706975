"""Multi-objective steepest descent with step-modification variants."""

from .core import (
    Counters,
    LineSearchFailure,
    NumericalFailure,
    Problem,
    SolverConfig,
    SolverKind,
    Status,
    evaluate_counted,
    jacobian_counted,
)
from .linesearch import LineSearchResult, armijo
from .solvers import IterationRecord, RunTrace, run, run_mdsd, run_msd, run_msd1, run_msd2
from .subproblem import SubproblemSolution, is_critical, psi, solve_dual

__all__ = [
    "Counters",
    "IterationRecord",
    "LineSearchFailure",
    "LineSearchResult",
    "NumericalFailure",
    "Problem",
    "RunTrace",
    "SolverConfig",
    "SolverKind",
    "Status",
    "SubproblemSolution",
    "armijo",
    "evaluate_counted",
    "is_critical",
    "jacobian_counted",
    "psi",
    "run",
    "run_mdsd",
    "run_msd",
    "run_msd1",
    "run_msd2",
    "solve_dual",
]
