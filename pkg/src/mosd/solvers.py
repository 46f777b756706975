"""Multi-objective steepest descent and its step-modified variants.

All four methods share one loop: solve the direction subproblem at ``x^k``,
stop once ``|gamma(x^k)| <= gamma_tol``, backtrack along a scaled steepest
descent direction, and update the scaling parameter.

* ``MSD``  - plain steps ``x + t v``.
* ``MSD1`` - steps ``x + t v / tau`` with ``tau`` fitted to the observed
  decrease of the weighted objective (a scalar diagonal Hessian model).
* ``MDSD`` - same step shape, ``tau`` from a safeguarded secant ratio of
  weighted gradient differences.
* ``MSD2`` - backtrack along ``v`` to ``z = x + t v``, then stretch the step
  by ``theta = p / q`` estimated from one extra Jacobian at ``z``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

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
from .linesearch import armijo
from .subproblem import SubproblemSolution, is_critical, solve_dual


@dataclass
class IterationRecord:
    k: int
    gamma: float
    v_norm: float
    F_x: np.ndarray | None
    # Step data is None on the last record, where no step was taken.
    t: float | None
    theta_or_tau: float | None
    x: np.ndarray | None = None


@dataclass
class RunTrace:
    problem: str
    solver: SolverKind
    status: Status
    records: list[IterationRecord]
    final_x: np.ndarray
    final_F: np.ndarray | None
    final_lambda: np.ndarray | None
    final_gamma: float
    counters: Counters
    message: str = ""

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def msd1_tau_update(tau: float, lam, F_old, F_new, t: float, v_sq: float) -> float:
    """Scalar Hessian estimate matching the observed weighted decrease.

    Non-positive or non-finite values are replaced by 1, which turns the next
    step into a plain steepest descent step.
    """
    dF = float(np.dot(lam, np.asarray(F_new) - np.asarray(F_old)))
    raw = 2.0 * tau * (tau * dF + t * v_sq) / (t * t * v_sq)
    return msd1_tau_safeguard(raw)


def msd1_tau_safeguard(raw: float) -> float:
    if not math.isfinite(raw) or raw <= 0.0:
        return 1.0
    return raw


def mdsd_tau_update(tau0: float, lam, jac_old, jac_new, x_old, x_new) -> float:
    """Secant ratio of the weighted gradient difference, floored at ``tau0``."""
    s = np.asarray(x_new) - np.asarray(x_old)
    y = np.asarray(lam) @ (np.asarray(jac_new) - np.asarray(jac_old))
    ratio = float(y @ s) / float(s @ s)
    if not math.isfinite(ratio):
        return tau0
    return max(tau0, ratio)


def msd2_theta(p: float, q: float, cap: float | None = None) -> float:
    # q at or below roundoff level (or negative, on nonconvex patches) falls back to theta = 1.
    if not q > 1e-12 * max(1.0, p):
        return 1.0
    theta = p / q
    if not math.isfinite(theta):
        return 1.0
    if cap is not None:
        theta = min(theta, cap)
    return theta


def run(problem: Problem, x0, config: SolverConfig) -> RunTrace:
    """Run the method selected by ``config.kind`` from ``x0``."""
    kind = SolverKind(config.kind)
    counters = Counters()
    records: list[IterationRecord] = []
    keep_x = config.store_iterates

    x = np.array(x0, dtype=float)
    if x.shape != (problem.n,):
        raise ValueError(f"x0 has shape {x.shape}, expected ({problem.n},)")

    F_x: np.ndarray | None = None
    jac: np.ndarray | None = None
    sol: SubproblemSolution | None = None
    tau = config.tau0 if kind is SolverKind.MDSD else 1.0
    # MDSD updates tau once the Jacobian at the new iterate is available.
    pending_secant = None
    status = Status.ITERATION_CAP
    message = ""

    sol_k = None
    start = time.perf_counter()
    try:
        if not np.all(np.isfinite(x)):
            raise NumericalFailure("non-finite starting point")
        for k in range(config.max_iters + 1):
            sol_k = None
            if jac is None:
                jac = jacobian_counted(problem, x, counters)
            if pending_secant is not None:
                lam_old, jac_old, x_old = pending_secant
                tau = mdsd_tau_update(config.tau0, lam_old, jac_old, jac, x_old, x)
                pending_secant = None

            sol = sol_k = solve_dual(jac, config.dual_tol, config.dual_max_iters)
            current_param = None if kind is SolverKind.MSD2 else tau
            if is_critical(sol, config.gamma_tol):
                status = Status.CONVERGED
                records.append(IterationRecord(k, sol.gamma, sol.v_norm, F_x, None, current_param, x.copy() if keep_x else None))
                break
            if k == config.max_iters:
                status = Status.ITERATION_CAP
                records.append(IterationRecord(k, sol.gamma, sol.v_norm, F_x, None, current_param, x.copy() if keep_x else None))
                break

            if F_x is None:
                F_x = evaluate_counted(problem, x, counters)
            v = sol.v
            v_sq = float(v @ v)
            d = v if kind in (SolverKind.MSD, SolverKind.MSD2) else v / tau
            # psi is positively homogeneous, so psi(x, v / tau) = psi(x, v) / tau.
            psi_d = sol.psi_at_v if d is v else sol.psi_at_v / tau
            try:
                ls = armijo(problem, x, F_x, d, psi_d, config.rho, config.delta, config.max_linesearch_steps, counters)
            except LineSearchFailure:
                records.append(IterationRecord(k, sol.gamma, sol.v_norm, F_x, None, current_param, x.copy() if keep_x else None))
                raise
            t = ls.t

            step_param = tau
            next_jac = None
            if kind is SolverKind.MSD:
                x_new, F_new = ls.accepted_point, ls.accepted_value
            elif kind is SolverKind.MSD1:
                x_new, F_new = ls.accepted_point, ls.accepted_value
                tau_next = msd1_tau_update(tau, sol.lam, F_x, F_new, t, v_sq)
            elif kind is SolverKind.MDSD:
                x_new, F_new = ls.accepted_point, ls.accepted_value
                pending_secant = (sol.lam, jac, x)
            else:
                z = ls.accepted_point
                jac_z = jacobian_counted(problem, z, counters)
                p = t * v_sq
                q = t * float((sol.lam @ (jac_z - jac)) @ v)
                theta = msd2_theta(p, q, config.theta_cap)
                x_new, F_new, next_jac = z, ls.accepted_value, jac_z
                if theta != 1.0:
                    candidate = x + theta * t * v
                    try:
                        next_jac = jacobian_counted(problem, candidate, counters)
                        x_new, F_new = candidate, None
                    except NumericalFailure:
                        # The stretched point left the objective's domain; keep the trial point.
                        theta = 1.0
                        next_jac = jac_z
                step_param = theta

            records.append(IterationRecord(k, sol.gamma, sol.v_norm, F_x, t, step_param, x.copy() if keep_x else None))
            if kind is SolverKind.MSD1:
                tau = tau_next
            x, F_x, jac = x_new, F_new, next_jac
            counters.iterations += 1
    except LineSearchFailure as exc:
        status, message = Status.LINESEARCH_FAILURE, str(exc)
    except NumericalFailure as exc:
        status, message = Status.NUMERICAL_FAILURE, str(exc)
        if len(records) < counters.iterations + 1:
            gamma, v_norm = (math.nan, math.nan) if sol_k is None else (sol_k.gamma, sol_k.v_norm)
            records.append(IterationRecord(counters.iterations, gamma, v_norm, F_x, None, None, x.copy() if keep_x else None))
    counters.wall_time = time.perf_counter() - start

    final_F = F_x
    if final_F is None:
        # Reporting-only evaluation, not charged to the run.
        try:
            final_F = problem.evaluate(x)
        except NumericalFailure:
            final_F = None
    if records and records[-1].F_x is None:
        records[-1].F_x = final_F

    return RunTrace(
        problem=problem.name,
        solver=kind,
        status=status,
        records=records,
        final_x=x,
        final_F=final_F,
        final_lambda=None if sol is None else sol.lam,
        final_gamma=math.nan if sol is None else sol.gamma,
        counters=counters,
        message=message,
    )


def _with_kind(config: SolverConfig | None, kind: SolverKind, **overrides) -> SolverConfig:
    config = config or SolverConfig()
    return replace(config, kind=kind, **overrides)


def run_msd(problem: Problem, x0, config: SolverConfig | None = None) -> RunTrace:
    return run(problem, x0, _with_kind(config, SolverKind.MSD))


def run_msd1(problem: Problem, x0, config: SolverConfig | None = None) -> RunTrace:
    return run(problem, x0, _with_kind(config, SolverKind.MSD1))


def run_mdsd(problem: Problem, x0, config: SolverConfig | None = None) -> RunTrace:
    return run(problem, x0, _with_kind(config, SolverKind.MDSD))


def run_msd2(problem: Problem, x0, config: SolverConfig | None = None) -> RunTrace:
    return run(problem, x0, _with_kind(config, SolverKind.MSD2))
