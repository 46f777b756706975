"""Componentwise Armijo backtracking for vector objectives."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Counters, LineSearchFailure, NumericalFailure, Problem, evaluate_counted


@dataclass(frozen=True)
class LineSearchResult:
    t: float
    trial_count: int
    accepted_point: np.ndarray
    accepted_value: np.ndarray


def armijo(
    problem: Problem,
    x: np.ndarray,
    F_x: np.ndarray,
    d: np.ndarray,
    psi_xd: float,
    rho: float,
    delta: float,
    max_steps: int,
    counters: Counters,
) -> LineSearchResult:
    """Largest ``t`` in ``{1, delta, delta^2, ...}`` with ``F(x + t d) <= F(x) + rho t psi e``.

    ``F_x`` must already be known; each trial costs one function evaluation.
    A trial point where ``F`` is undefined or non-finite is rejected like any
    other failed trial.

    Raises
    ------
    LineSearchFailure
        If ``max_steps`` trials are rejected.
    """
    if not psi_xd < 0:
        raise ValueError("armijo needs a descent direction (psi < 0)")
    t = 1.0
    for trial in range(1, max_steps + 1):
        x_new = x + t * d
        try:
            f_new = evaluate_counted(problem, x_new, counters)
        except NumericalFailure:
            f_new = None
        if f_new is not None and np.all(f_new <= F_x + rho * t * psi_xd):
            return LineSearchResult(t=t, trial_count=trial, accepted_point=x_new, accepted_value=f_new)
        t *= delta
    raise LineSearchFailure(f"no acceptable step after {max_steps} trials")
