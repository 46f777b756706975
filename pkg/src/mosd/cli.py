"""Command-line interface: ``mosd {solve,validate,bench,profile,front,manifest}``.

Exit codes: 0 on success, 1 when a run fails (or every bench run fails), 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bench
from .core import SolverConfig, SolverKind
from .problems import (
    InvalidDimension,
    SamplerSpec,
    UnknownProblem,
    check_jacobian,
    get_problem,
    manifest,
    parse_problem_spec,
    problem_names,
    sample_starts,
)
from .solvers import run
from .svg import render_profile_svg


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("MOSD_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"MOSD_SEED must be an integer, got {raw!r}") from None


def _solver_list(text: str) -> list[SolverKind]:
    try:
        return [SolverKind(s.strip().lower()) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"unknown solver in {text!r} (choose from msd, mdsd, msd1, msd2)") from exc


def _problem(spec: str, n: int | None = None):
    name, n_spec = parse_problem_spec(spec)
    return get_problem(name, n if n is not None else n_spec)


def _config(args, kind: SolverKind, **extra) -> SolverConfig:
    return SolverConfig(
        kind=kind,
        rho=args.rho,
        delta=args.delta,
        gamma_tol=args.gamma_tol,
        max_iters=args.max_iters,
        tau0=args.tau0,
        theta_cap=args.cap_theta,
        **extra,
    )


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rho", type=float, default=1e-4)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--gamma-tol", type=float, default=1e-6)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--tau0", type=float, default=1e-4, help="initial tau for MDSD")
    p.add_argument("--cap-theta", type=float, default=None, help="upper cap on the MSD-II multiplier")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mosd", description="Multi-objective steepest descent solvers and benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one solver from one start")
    p.add_argument("--problem", required=True, help="NAME or NAME:n")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--solver", default="msd")
    p.add_argument("--x0", default=None, help="comma-separated start (a single value is broadcast)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--start-index", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--json", dest="json_out", default=None, help="also write the trace as JSON to this path")
    _add_solver_flags(p)

    p = sub.add_parser("validate", help="check analytic Jacobians against central differences")
    p.add_argument("--problems", default=None)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-5)

    p = sub.add_parser("bench", help="multi-start campaign with CSV/JSONL output")
    p.add_argument("--problems", default=None, help="comma-separated NAME[:n] list (default: full table)")
    p.add_argument("--solvers", default="msd,mdsd,msd1,msd2")
    p.add_argument("--starts", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out-dir", default="results")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    _add_solver_flags(p)

    p = sub.add_parser("profile", help="performance profiles from bench output")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--results", help="results CSV from bench")
    src.add_argument("--runs", help="runs JSONL from bench (use with --per-run)")
    p.add_argument("--per-run", action="store_true", help="one instance per (problem, start) instead of per problem")
    p.add_argument("--metric", choices=bench.METRICS, default="it")
    p.add_argument("--out", default=None, help="profile CSV path (default: stdout)")
    p.add_argument("--svg", default=None)

    p = sub.add_parser("front", help="final objective vectors of converged runs (bi-objective problems)")
    p.add_argument("--problem", required=True)
    p.add_argument("--solvers", default="msd,mdsd,msd1,msd2")
    p.add_argument("--starts", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    _add_solver_flags(p)

    p = sub.add_parser("manifest", help="registry listing as JSON")
    p.add_argument("--out", default=None)
    return parser


# ---------------------------------------------------------------------------


def trace_to_dict(trace) -> dict:
    c = trace.counters
    return {
        "problem": trace.problem,
        "solver": trace.solver.value,
        "status": trace.status.value,
        "iterations": c.iterations,
        "f_evals": c.f_evals,
        "g_evals": c.g_evals,
        "wall_time": c.wall_time,
        "final_gamma": bench._clean(float(trace.final_gamma)),
        "final_x": trace.final_x.tolist(),
        "final_F": None if trace.final_F is None else trace.final_F.tolist(),
        "final_lambda": None if trace.final_lambda is None else trace.final_lambda.tolist(),
        "records": [
            {"k": r.k, "gamma": bench._clean(r.gamma), "v_norm": bench._clean(r.v_norm), "t": r.t, "theta_or_tau": r.theta_or_tau}
            for r in trace.records
        ],
    }


def cmd_solve(args) -> int:
    problem = _problem(args.problem, args.n)
    kind = _solver_list(args.solver)
    if len(kind) != 1:
        raise UsageError("solve takes exactly one solver")
    if args.x0 is not None:
        try:
            values = [float(v) for v in args.x0.split(",")]
        except ValueError:
            raise UsageError(f"bad --x0 {args.x0!r}") from None
        if len(values) == 1:
            values = values * problem.n
        if len(values) != problem.n:
            raise UsageError(f"--x0 has {len(values)} entries, problem needs {problem.n}")
        x0 = np.array(values)
    else:
        seed = _default_seed() if args.seed is None else args.seed
        spec = SamplerSpec(seed=seed, count=args.start_index + 1)
        x0 = sample_starts(problem, spec)[args.start_index]

    trace = run(problem, x0, _config(args, kind[0]))
    data = trace_to_dict(trace)
    if args.format == "json":
        print(json.dumps(data))
    else:
        print(f"{problem.name} (m={problem.m}, n={problem.n}) with {trace.solver.label}")
        print(f"{'k':>5} {'|gamma|':>12} {'||v||':>12} {'t':>10} {'theta/tau':>12}")
        for r in trace.records:
            t = "-" if r.t is None else f"{r.t:.4g}"
            p = "-" if r.theta_or_tau is None else f"{r.theta_or_tau:.4g}"
            print(f"{r.k:>5} {abs(r.gamma):>12.4e} {r.v_norm:>12.4e} {t:>10} {p:>12}")
        c = trace.counters
        print(f"status: {trace.status.value}  it={c.iterations} fE={c.f_evals} gE={c.g_evals} T={c.wall_time:.3e}s")
        if problem.n <= 10:
            print("x* =", np.array2string(trace.final_x, precision=8))
        if trace.final_F is not None:
            print("F(x*) =", np.array2string(trace.final_F, precision=8))
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(data, indent=1))
    return 0 if trace.converged else 1


def cmd_validate(args) -> int:
    names = problem_names() if args.problems is None else [s for s in args.problems.split(",") if s]
    rng = np.random.default_rng(_default_seed() if args.seed is None else args.seed)
    worst_all = 0.0
    for spec in names:
        problem = _problem(spec)
        lb, ub = problem.lower_bound, problem.upper_bound
        worst = 0.0
        for _ in range(args.points):
            x = lb + (ub - lb) * (0.05 + 0.9 * rng.random(problem.n))
            worst = max(worst, check_jacobian(problem, x))
        worst_all = max(worst_all, worst)
        flag = "ok" if worst <= args.tol else "FAIL"
        print(f"{problem.name:<8} m={problem.m:<3} n={problem.n:<5} max_rel_err={worst:.3e} {flag}")
    return 0 if worst_all <= args.tol else 1


def cmd_bench(args) -> int:
    names = problem_names() if args.problems is None else [s for s in args.problems.split(",") if s]
    refs = []
    for spec in names:
        name, n = parse_problem_spec(spec)
        get_problem(name, n)
        refs.append(bench.ProblemRef(name, n))
    kinds = _solver_list(args.solvers)
    seed = _default_seed() if args.seed is None else args.seed
    if args.starts < 1:
        raise UsageError("--starts must be positive")
    spec = bench.CampaignSpec(
        problems=refs,
        solvers=[_config(args, k) for k in kinds],
        starts=SamplerSpec(seed=seed, count=args.starts),
        parallelism=args.workers,
    )
    results = bench.run_campaign(spec)
    summaries = bench.summarize(results)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    bench.write_results_csv(summaries, out / "results.csv")
    bench.write_runs_jsonl(results, out / "runs.jsonl")
    if args.format == "csv":
        sys.stdout.write((out / "results.csv").read_text())
    else:
        sys.stdout.write(bench.format_summary_table(summaries))
        print(f"wrote {out / 'results.csv'} and {out / 'runs.jsonl'}")
    return 1 if all(not r.trace.converged for r in results) else 0


def cmd_profile(args) -> int:
    try:
        if args.results:
            if args.per_run:
                raise UsageError("--per-run needs --runs")
            curves = bench.performance_profile(bench.read_results_csv(args.results), args.metric)
        else:
            results = bench.results_from_records(bench.read_runs_jsonl(args.runs))
            curves = (
                bench.performance_profile_runs(results, args.metric)
                if args.per_run
                else bench.performance_profile(bench.summarize(results), args.metric)
            )
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read input: {exc}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    if args.out:
        bench.write_profile_csv(curves, args.out)
    else:
        print(",".join(bench.PROFILE_HEADER))
        for solver, tau, rho in bench.profile_rows(curves):
            print(f"{solver},{bench._fmt(tau)},{bench._fmt(rho)}")
    if args.svg:
        Path(args.svg).write_text(render_profile_svg(curves, title=f"Performance profile ({args.metric})"))
    return 0


def cmd_front(args) -> int:
    problem = _problem(args.problem)
    if problem.m != 2:
        raise UsageError(f"{problem.name} has {problem.m} objectives; front export needs 2")
    seed = _default_seed() if args.seed is None else args.seed
    starts = sample_starts(problem, SamplerSpec(seed=seed, count=args.starts))
    rows = []
    for kind in _solver_list(args.solvers):
        for index, F in bench.pareto_front_points(problem, _config(args, kind), starts):
            rows.append((problem.name, kind.value, index, F))
    if args.out:
        bench.write_front_csv(rows, args.out)
        print(f"wrote {len(rows)} points to {args.out}")
    else:
        print(",".join(bench.FRONT_HEADER))
        for name, solver, index, F in rows:
            print(f"{name},{solver},{index},{float(F[0])!r},{float(F[1])!r}")
    return 0


def cmd_manifest(args) -> int:
    text = json.dumps(manifest(), indent=1)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "validate": cmd_validate,
    "bench": cmd_bench,
    "profile": cmd_profile,
    "front": cmd_front,
    "manifest": cmd_manifest,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UnknownProblem as exc:
        print(f"error: UnknownProblem: {exc.args[0]}", file=sys.stderr)
        return 2
    except (InvalidDimension, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # Invalid solver settings (e.g. rho outside (0, 1)).
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
