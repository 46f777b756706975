"""Multi-start benchmark campaigns, summaries, performance profiles and exports."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Counters, SolverConfig, SolverKind, Status
from .problems import SamplerSpec, get_problem, sample_starts
from .solvers import RunTrace, run

METRICS = ("it", "fE", "gE", "T")


@dataclass(frozen=True)
class ProblemRef:
    name: str
    n: int | None = None

    @property
    def label(self) -> str:
        return self.name if self.n is None else f"{self.name}:{self.n}"


@dataclass
class CampaignSpec:
    problems: list[ProblemRef]
    solvers: list[SolverConfig]
    starts: SamplerSpec = field(default_factory=SamplerSpec)
    parallelism: int = 1


@dataclass
class RunResult:
    problem: str
    n: int
    solver: SolverKind
    start_index: int
    trace: RunTrace


@dataclass(frozen=True)
class ProblemSummary:
    problem: str
    solver: SolverKind
    it_avg: float
    fE_avg: float
    gE_avg: float
    T_avg: float
    success_pct: float
    runs: int

    def metric(self, name: str) -> float:
        return {"it": self.it_avg, "fE": self.fE_avg, "gE": self.gE_avg, "T": self.T_avg}[name]


@dataclass(frozen=True)
class ProfileCurve:
    """Right-continuous step function given by ``(tau, rho)`` breakpoints."""

    solver: str
    breakpoints: tuple[tuple[float, float], ...]

    def rho(self, tau: float) -> float:
        value = 0.0
        for t, r in self.breakpoints:
            if t <= tau:
                value = r
            else:
                break
        return value


# ---------------------------------------------------------------------------
# Campaigns


def _run_batch(ref: ProblemRef, config: SolverConfig, starts: list[np.ndarray]) -> list[RunTrace]:
    problem = get_problem(ref.name, ref.n)
    return [run(problem, x0, config) for x0 in starts]


def run_campaign(spec: CampaignSpec) -> list[RunResult]:
    """Run every (problem, solver, start) combination.

    Start points are drawn once per problem and shared by all solvers. Results
    come back ordered by problem, then solver, then start index, whatever the
    worker count.
    """
    jobs = []
    for ref in spec.problems:
        problem = get_problem(ref.name, ref.n)
        starts = sample_starts(problem, spec.starts)
        for config in spec.solvers:
            jobs.append((ref, problem.name, problem.n, config, starts))

    if spec.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=spec.parallelism) as pool:
            futures = [pool.submit(_run_batch, ref, config, starts) for ref, _, _, config, starts in jobs]
            batches = [f.result() for f in futures]
    else:
        batches = [_run_batch(ref, config, starts) for ref, _, _, config, starts in jobs]

    results = []
    for (ref, name, n, config, _), traces in zip(jobs, batches):
        for i, trace in enumerate(traces):
            results.append(RunResult(name, n, SolverKind(config.kind), i, trace))
    return results


def summarize(results: Iterable[RunResult]) -> list[ProblemSummary]:
    """Average counters per (problem, solver) over all runs, failed ones included."""
    groups: OrderedDict[tuple[str, SolverKind], list[RunTrace]] = OrderedDict()
    for r in results:
        groups.setdefault((r.problem, r.solver), []).append(r.trace)
    out = []
    for (problem, solver), traces in groups.items():
        c = [t.counters for t in traces]
        out.append(
            ProblemSummary(
                problem=problem,
                solver=solver,
                it_avg=float(np.mean([x.iterations for x in c])),
                fE_avg=float(np.mean([x.f_evals for x in c])),
                gE_avg=float(np.mean([x.g_evals for x in c])),
                T_avg=float(np.mean([x.wall_time for x in c])),
                success_pct=100.0 * sum(t.status is Status.CONVERGED for t in traces) / len(traces),
                runs=len(traces),
            )
        )
    return out


# ---------------------------------------------------------------------------
# Performance profiles


def profile_from_table(table: dict, solvers: Sequence[str]) -> list[ProfileCurve]:
    """Performance profiles from ``table[problem][solver] -> value``.

    A value of ``None`` marks a failure (infinite ratio). Problems on which
    every solver failed are dropped from the denominator.

    Raises
    ------
    ValueError
        If a non-failed value is not strictly positive and finite.
    """
    ratios: dict[str, list[float]] = {s: [] for s in solvers}
    for problem, row in table.items():
        values = {s: row.get(s) for s in solvers}
        finite = [v for v in values.values() if v is not None]
        if not finite:
            continue
        for s, v in values.items():
            if v is not None and not (math.isfinite(v) and v > 0):
                raise ValueError(f"performance ratio undefined: {problem}/{s} has value {v}")
        best = min(finite)
        for s, v in values.items():
            ratios[s].append(math.inf if v is None else v / best)

    curves = []
    for s in solvers:
        z = ratios[s]
        n_p = len(z)
        if n_p == 0:
            curves.append(ProfileCurve(s, ((1.0, 0.0),)))
            continue
        taus = sorted({1.0} | {r for r in z if math.isfinite(r)})
        points = tuple((t, sum(r <= t for r in z) / n_p) for t in taus)
        curves.append(ProfileCurve(s, points))
    return curves


def performance_profile(summaries: Sequence[ProblemSummary], metric: str) -> list[ProfileCurve]:
    """Profiles with one instance per problem, using averaged metrics.

    A (problem, solver) pair with no converged run counts as a failure.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    solvers: list[str] = []
    table: dict[str, dict[str, float | None]] = {}
    for s in summaries:
        key = s.solver.value if isinstance(s.solver, SolverKind) else str(s.solver)
        if key not in solvers:
            solvers.append(key)
        table.setdefault(s.problem, {})[key] = s.metric(metric) if s.success_pct > 0 else None
    return profile_from_table(table, solvers)


def performance_profile_runs(results: Sequence[RunResult], metric: str) -> list[ProfileCurve]:
    """Profiles with one instance per (problem, start); failed runs count as infinite."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    solvers: list[str] = []
    table: dict[tuple[str, int], dict[str, float | None]] = {}
    for r in results:
        key = r.solver.value
        if key not in solvers:
            solvers.append(key)
        c = r.trace.counters
        value = {"it": c.iterations, "fE": c.f_evals, "gE": c.g_evals, "T": c.wall_time}[metric]
        table.setdefault((r.problem, r.start_index), {})[key] = float(value) if r.trace.converged else None
    return profile_from_table(table, solvers)


# ---------------------------------------------------------------------------
# Pareto fronts


def pareto_front_points(problem, config: SolverConfig, starts: Sequence[np.ndarray]) -> list[tuple[int, np.ndarray]]:
    """Final objective vectors of the converged runs, tagged with their start index."""
    if problem.m != 2:
        raise ValueError("front export is limited to bi-objective problems")
    points = []
    for i, x0 in enumerate(starts):
        trace = run(problem, x0, config)
        if trace.converged and trace.final_F is not None:
            points.append((i, trace.final_F))
    return points


# ---------------------------------------------------------------------------
# File formats

RESULTS_HEADER = ["problem", "solver", "it", "fE", "gE", "T", "success_pct"]
PROFILE_HEADER = ["solver", "tau", "rho"]
FRONT_HEADER = ["problem", "solver", "start_index", "f1", "f2"]


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def write_results_csv(summaries: Sequence[ProblemSummary], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULTS_HEADER)
        for s in summaries:
            w.writerow([s.problem, s.solver.value, _fmt(s.it_avg), _fmt(s.fE_avg), _fmt(s.gE_avg), _fmt(s.T_avg), _fmt(s.success_pct)])


def read_results_csv(path) -> list[ProblemSummary]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RESULTS_HEADER:
            raise ValueError(f"unexpected results header {reader.fieldnames}")
        out = []
        for row in reader:
            try:
                out.append(
                    ProblemSummary(
                        problem=row["problem"],
                        solver=SolverKind(row["solver"]),
                        it_avg=float(row["it"]),
                        fE_avg=float(row["fE"]),
                        gE_avg=float(row["gE"]),
                        T_avg=float(row["T"]),
                        success_pct=float(row["success_pct"]),
                        runs=0,
                    )
                )
            except (TypeError, ValueError, KeyError) as exc:
                raise ValueError(f"malformed results row {row}: {exc}") from exc
    return out


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def run_record(r: RunResult) -> dict:
    t = r.trace
    c = t.counters
    return {
        "problem": r.problem,
        "n": r.n,
        "solver": r.solver.value,
        "start_index": r.start_index,
        "status": t.status.value,
        "iterations": c.iterations,
        "f_evals": c.f_evals,
        "g_evals": c.g_evals,
        "wall_time": c.wall_time,
        "final_gamma": _clean(float(t.final_gamma)),
        "final_x": [_clean(float(v)) for v in t.final_x],
        "final_F": None if t.final_F is None else [_clean(float(v)) for v in t.final_F],
    }


def write_runs_jsonl(results: Sequence[RunResult], path) -> None:
    with open(path, "w") as fh:
        for r in results:
            fh.write(json.dumps(run_record(r)) + "\n")


def read_runs_jsonl(path) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def results_from_records(records: Sequence[dict]) -> list[RunResult]:
    """Rebuild lightweight run results (counters and status only) from JSONL records."""
    out = []
    for rec in records:
        counters = Counters(rec["iterations"], rec["f_evals"], rec["g_evals"], rec["wall_time"])
        trace = RunTrace(
            problem=rec["problem"],
            solver=SolverKind(rec["solver"]),
            status=Status(rec["status"]),
            records=[],
            final_x=np.asarray(rec["final_x"], dtype=float),
            final_F=None if rec["final_F"] is None else np.asarray(rec["final_F"], dtype=float),
            final_lambda=None,
            final_gamma=math.nan if rec["final_gamma"] is None else rec["final_gamma"],
            counters=counters,
        )
        out.append(RunResult(rec["problem"], rec["n"], trace.solver, rec["start_index"], trace))
    return out


def profile_rows(curves: Sequence[ProfileCurve]) -> list[tuple[str, float, float]]:
    """CSV rows with ``tau`` in log2 units."""
    return [(c.solver, math.log2(t), r) for c in curves for t, r in c.breakpoints]


def write_profile_csv(curves: Sequence[ProfileCurve], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PROFILE_HEADER)
        for solver, tau, rho in profile_rows(curves):
            w.writerow([solver, _fmt(tau), _fmt(rho)])


def read_profile_csv(path) -> list[ProfileCurve]:
    """Read a profile CSV back, converting log2 ``tau`` to ratios."""
    curves: OrderedDict[str, list[tuple[float, float]]] = OrderedDict()
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != PROFILE_HEADER:
            raise ValueError(f"unexpected profile header {reader.fieldnames}")
        for row in reader:
            curves.setdefault(row["solver"], []).append((2.0 ** float(row["tau"]), float(row["rho"])))
    return [ProfileCurve(s, tuple(p)) for s, p in curves.items()]


def write_front_csv(rows: Iterable[tuple[str, str, int, np.ndarray]], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(FRONT_HEADER)
        for problem, solver, index, F in rows:
            w.writerow([problem, solver, index, repr(float(F[0])), repr(float(F[1]))])


def read_front_csv(path) -> list[tuple[str, str, int, np.ndarray]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != FRONT_HEADER:
            raise ValueError(f"unexpected front header {reader.fieldnames}")
        return [(r["problem"], r["solver"], int(r["start_index"]), np.array([float(r["f1"]), float(r["f2"])])) for r in reader]


def format_summary_table(summaries: Sequence[ProblemSummary]) -> str:
    buf = io.StringIO()
    buf.write(f"{'problem':<10} {'solver':<7} {'it':>9} {'fE':>10} {'gE':>9} {'T':>11} {'%':>6}\n")
    for s in summaries:
        buf.write(
            f"{s.problem:<10} {s.solver.label:<7} {s.it_avg:>9.2f} {s.fE_avg:>10.2f} {s.gE_avg:>9.2f} "
            f"{s.T_avg:>11.4e} {s.success_pct:>6.1f}\n"
        )
    return buf.getvalue()


def default_workers() -> int:
    return max(1, min(4, os.cpu_count() or 1))
