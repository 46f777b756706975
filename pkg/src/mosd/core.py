"""Shared types: problems, evaluation counters, solver configuration."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class NumericalFailure(ArithmeticError):
    """Raised when an objective or Jacobian evaluation is non-finite or out of domain."""


class LineSearchFailure(RuntimeError):
    """Raised when backtracking exhausts its step budget."""


class SolverKind(str, enum.Enum):
    MSD = "msd"
    MDSD = "mdsd"
    MSD1 = "msd1"
    MSD2 = "msd2"

    @property
    def label(self) -> str:
        return {"msd": "MSD", "mdsd": "MDSD", "msd1": "MSD-I", "msd2": "MSD-II"}[self.value]


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    ITERATION_CAP = "IterationCap"
    LINESEARCH_FAILURE = "LineSearchFailure"
    NUMERICAL_FAILURE = "NumericalFailure"


class Problem:
    """A smooth vector objective ``F: R^n -> R^m`` with an analytic Jacobian.

    Subclasses implement :meth:`_f` and :meth:`_jac`. The box
    ``[lower_bound, upper_bound]`` is only used to draw starting points; the
    solvers iterate unconstrained.
    """

    name: str = "problem"
    source: str = ""
    convex: bool = False

    def __init__(self, n: int, m: int, lower_bound, upper_bound):
        self.n = int(n)
        self.m = int(m)
        lb = np.broadcast_to(np.asarray(lower_bound, dtype=float), (self.n,)).copy()
        ub = np.broadcast_to(np.asarray(upper_bound, dtype=float), (self.n,)).copy()
        if np.any(lb > ub):
            raise ValueError(f"{self.name}: lower bound exceeds upper bound")
        lb.setflags(write=False)
        ub.setflags(write=False)
        self.lower_bound = lb
        self.upper_bound = ub

    def _f(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _jac(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def in_domain(self, x: np.ndarray) -> bool:
        return True

    def evaluate(self, x) -> np.ndarray:
        x = self._check_point(x)
        if not self.in_domain(x):
            raise NumericalFailure(f"{self.name}: point outside the objective's domain")
        try:
            with np.errstate(all="ignore"):
                fx = np.asarray(self._f(x), dtype=float)
        except (OverflowError, ZeroDivisionError, ValueError) as exc:
            raise NumericalFailure(f"{self.name}: {exc}") from exc
        if fx.shape != (self.m,) or not np.all(np.isfinite(fx)):
            raise NumericalFailure(f"{self.name}: non-finite objective value")
        return fx

    def jacobian(self, x) -> np.ndarray:
        x = self._check_point(x)
        if not self.in_domain(x):
            raise NumericalFailure(f"{self.name}: point outside the objective's domain")
        try:
            with np.errstate(all="ignore"):
                jac = np.asarray(self._jac(x), dtype=float)
        except (OverflowError, ZeroDivisionError, ValueError) as exc:
            raise NumericalFailure(f"{self.name}: {exc}") from exc
        if jac.shape != (self.m, self.n) or not np.all(np.isfinite(jac)):
            raise NumericalFailure(f"{self.name}: non-finite Jacobian")
        return jac

    def _check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"{self.name}: expected a point of dimension {self.n}, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise NumericalFailure(f"{self.name}: non-finite point")
        return x

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, m={self.m}, n={self.n})"


@dataclass
class Counters:
    iterations: int = 0
    f_evals: int = 0
    g_evals: int = 0
    wall_time: float = 0.0


def evaluate_counted(problem: Problem, x, counters: Counters) -> np.ndarray:
    """Evaluate ``F(x)`` and charge one function evaluation.

    The evaluation is charged even when it fails, since the work was spent.
    """
    counters.f_evals += 1
    return problem.evaluate(x)


def jacobian_counted(problem: Problem, x, counters: Counters) -> np.ndarray:
    counters.g_evals += 1
    return problem.jacobian(x)


@dataclass(frozen=True)
class SolverConfig:
    kind: SolverKind = SolverKind.MSD
    rho: float = 1e-4
    delta: float = 0.5
    gamma_tol: float = 1e-6
    max_iters: int = 1000
    # MDSD only; MSD-I always starts from 1.
    tau0: float = 1e-4
    dual_tol: float = 1e-8
    dual_max_iters: int = 10000
    max_linesearch_steps: int = 60
    # Optional upper cap on the MSD-II step multiplier; None leaves it uncapped.
    theta_cap: float | None = None
    store_iterates: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", SolverKind(self.kind))
        if not 0 < self.rho < 1:
            raise ValueError("rho must lie in (0, 1)")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.gamma_tol <= 0 or self.tau0 <= 0 or self.dual_tol <= 0:
            raise ValueError("gamma_tol, tau0 and dual_tol must be positive")
        if self.max_iters < 1 or self.dual_max_iters < 1 or self.max_linesearch_steps < 1:
            raise ValueError("iteration limits must be positive")
        if self.theta_cap is not None and self.theta_cap <= 0:
            raise ValueError("theta_cap must be positive")
