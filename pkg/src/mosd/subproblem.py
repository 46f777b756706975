"""Steepest common descent direction via the simplex-constrained dual QP.

For a Jacobian ``J`` (rows are objective gradients) the direction subproblem

    min_d  max_i <grad F_i, d> + 0.5 ||d||^2

has the dual ``min_{lam in simplex} 0.5 ||J^T lam||^2`` and its solution is
recovered as ``v = -J^T lam``. The dual is solved with a conditional-gradient
(Frank-Wolfe) method using away steps and exact line searches; for two
objectives a closed-form solve is used instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SubproblemSolution:
    lam: np.ndarray
    v: np.ndarray
    gamma: float
    psi_at_v: float
    dual_value: float
    gap: float
    iterations: int
    inexact: bool = False

    @property
    def v_norm(self) -> float:
        return float(np.linalg.norm(self.v))


def psi(jac, d) -> float:
    """Largest directional derivative ``max_i <grad F_i(x), d>``."""
    jac = np.asarray(jac, dtype=float)
    d = np.asarray(d, dtype=float)
    if jac.ndim != 2 or jac.shape[1] != d.shape[0]:
        raise ValueError(f"dimension mismatch: jacobian {jac.shape}, direction {d.shape}")
    return float(np.max(jac @ d))


def dual_objective(jac, lam) -> float:
    w = np.asarray(lam, dtype=float) @ np.asarray(jac, dtype=float)
    return 0.5 * float(w @ w)


def frank_wolfe_simplex(gram: np.ndarray, tol: float, max_iters: int, away_steps: bool = True):
    """Minimize ``0.5 lam^T G lam`` over the unit simplex.

    Starts at the barycenter. Each iteration picks the linear-minimization
    vertex (lowest index on ties) or, when ``away_steps`` is set and the away
    direction promises more decrease, moves away from the worst active vertex.
    Step lengths come from the exact line search of the quadratic.

    Returns ``(lam, gap, iterations, converged)`` where ``gap`` is the
    Frank-Wolfe duality gap at the returned point.
    """
    m = gram.shape[0]
    lam = np.full(m, 1.0 / m)
    best_lam, best_val = lam.copy(), np.inf
    gap = np.inf
    for it in range(max_iters + 1):
        grad = gram @ lam
        quad = float(lam @ grad)
        j = int(np.argmin(grad))
        gap = quad - float(grad[j])
        val = 0.5 * quad
        if val < best_val:
            best_lam, best_val = lam.copy(), val
        if gap <= tol:
            return lam, max(gap, 0.0), it, True
        if it == max_iters:
            break

        if away_steps:
            active = np.flatnonzero(lam > 0.0)
            a = int(active[np.argmax(grad[active])])
            away_gap = float(grad[a]) - quad
        else:
            away_gap = -np.inf

        if gap >= away_gap:
            d = -lam
            d[j] += 1.0
            step_max = 1.0
            drop = None
        else:
            d = lam.copy()
            d[a] -= 1.0
            step_max = lam[a] / (1.0 - lam[a]) if lam[a] < 1.0 else np.inf
            drop = a

        slope = float(grad @ d)
        curv = float(d @ gram @ d)
        step = step_max if curv <= 0.0 else min(-slope / curv, step_max)
        lam = lam + step * d
        if drop is not None and step == step_max:
            lam[drop] = 0.0
        np.clip(lam, 0.0, None, out=lam)
        lam /= lam.sum()

    grad = gram @ best_lam
    gap = float(best_lam @ grad - grad.min())
    return best_lam, max(gap, 0.0), max_iters, gap <= tol


def _two_objective_weights(jac: np.ndarray) -> np.ndarray:
    diff = jac[0] - jac[1]
    den = float(diff @ diff)
    if den == 0.0:
        return np.array([0.5, 0.5])
    w = min(max(-float(jac[1] @ diff) / den, 0.0), 1.0)
    return np.array([w, 1.0 - w])


def solution_from_weights(jac, lam, gap: float = 0.0, iterations: int = 0, inexact: bool = False) -> SubproblemSolution:
    jac = np.asarray(jac, dtype=float)
    lam = np.asarray(lam, dtype=float)
    v = -(lam @ jac)
    psi_v = float(np.max(jac @ v))
    vv = float(v @ v)
    # d = 0 is feasible with value 0, so an inexact dual cannot push gamma above it.
    return SubproblemSolution(
        lam=lam,
        v=v,
        gamma=min(psi_v + 0.5 * vv, 0.0),
        psi_at_v=psi_v,
        dual_value=0.5 * vv,
        gap=gap,
        iterations=iterations,
        inexact=inexact,
    )


def solve_dual(jac, dual_tol: float = 1e-8, dual_max_iters: int = 10000, method: str = "auto") -> SubproblemSolution:
    """Solve the direction subproblem at a point with Jacobian ``jac``.

    ``method`` is ``"auto"`` (closed form when m == 2, Frank-Wolfe otherwise),
    ``"fw"`` (always Frank-Wolfe with away steps) or ``"fw-plain"`` (no away
    steps). When the iteration budget runs out the best weights found are
    returned with ``inexact=True``.
    """
    jac = np.asarray(jac, dtype=float)
    if jac.ndim != 2 or jac.shape[0] < 1:
        raise ValueError("jacobian must be a non-empty 2-D array")
    if not np.all(np.isfinite(jac)):
        raise ValueError("jacobian has non-finite entries")
    m = jac.shape[0]
    if m == 1:
        return solution_from_weights(jac, np.ones(1))
    if m == 2 and method == "auto":
        lam = _two_objective_weights(jac)
        grad = jac @ (lam @ jac)
        gap = max(float(lam @ grad - grad.min()), 0.0)
        return solution_from_weights(jac, lam, gap=gap)
    if method not in ("auto", "fw", "fw-plain"):
        raise ValueError(f"unknown dual method {method!r}")
    lam, gap, its, ok = frank_wolfe_simplex(jac @ jac.T, dual_tol, dual_max_iters, away_steps=method != "fw-plain")
    return solution_from_weights(jac, lam, gap=gap, iterations=its, inexact=not ok)


def is_critical(sol: SubproblemSolution, gamma_tol: float) -> bool:
    return abs(sol.gamma) <= gamma_tol
