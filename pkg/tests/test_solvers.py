import numpy as np
import pytest

from mosd import SolverConfig, SolverKind, Status, run, run_mdsd, run_msd, run_msd1, run_msd2
from mosd.problems import TABLE_PROBLEMS, SamplerSpec, get_problem, sample_starts
from mosd.solvers import mdsd_tau_update, msd1_tau_safeguard, msd1_tau_update, msd2_theta
from mosd.subproblem import solve_dual
from oracles import Saddle, Square

ALL_KINDS = list(SolverKind)


def test_bk1_msd_hand_trace():
    tr = run_msd(get_problem("BK1"), [6.0, 6.0])
    assert tr.status is Status.CONVERGED and tr.counters.iterations == 1
    assert tr.records[0].t == 0.5
    np.testing.assert_allclose(tr.final_x, [5.0, 5.0])
    np.testing.assert_allclose(tr.final_lambda, [0.0, 1.0])
    assert tr.final_gamma == 0.0


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_already_critical_start(kind):
    tr = run(get_problem("BK1"), [0.0, 0.0], SolverConfig(kind=kind))
    assert tr.status is Status.CONVERGED
    assert tr.counters.iterations == 0 and len(tr.records) == 1
    assert tr.counters.f_evals == 0 and tr.counters.g_evals == 1


def test_msd1_tau_update_examples():
    assert msd1_tau_update(1.0, [1.0], [1.0], [0.0], 0.5, 4.0) == pytest.approx(2.0)
    assert msd1_tau_safeguard(-3.0) == 1.0
    assert msd1_tau_safeguard(0.0) == 1.0
    assert msd1_tau_safeguard(float("nan")) == 1.0
    tau, t = 0.7, 0.25
    assert msd1_tau_update(tau, [0.5, 0.5], [1.0, 2.0], [1.0, 2.0], t, 3.0) == pytest.approx(2 * tau / t)


def test_msd1_on_square():
    tr = run_msd1(Square(), [1.0])
    assert tr.converged and tr.counters.iterations == 1
    assert tr.records[0].t == 0.5 and tr.records[0].theta_or_tau == 1.0
    assert tr.records[1].theta_or_tau == pytest.approx(2.0)
    np.testing.assert_allclose(tr.final_x, [0.0])


def test_mdsd_tau_update_examples():
    assert mdsd_tau_update(1e-4, [1.0], [[2.0]], [[0.0]], [1.0], [0.0]) == pytest.approx(2.0)
    # Negative curvature along the step.
    assert mdsd_tau_update(1e-4, [1.0], [[2.0]], [[4.0]], [1.0], [0.0]) == 1e-4
    # Linear objectives: no gradient change.
    assert mdsd_tau_update(1e-4, [0.5, 0.5], [[1.0, 2.0], [3.0, 4.0]], [[1.0, 2.0], [3.0, 4.0]], [0.0, 0.0], [1.0, 1.0]) == 1e-4


def test_mdsd_starts_from_tau0_and_updates_by_secant():
    tr = run_mdsd(Square(), [1.0], SolverConfig(tau0=0.5))
    assert tr.records[0].theta_or_tau == 0.5
    # Square has f'' = 2, so every secant ratio equals 2.
    for r in tr.records[1:]:
        assert r.theta_or_tau == pytest.approx(2.0)
    assert tr.converged


def test_msd2_on_square():
    tr = run_msd2(Square(), [1.0])
    assert tr.converged and tr.counters.iterations == 1
    assert tr.records[0].t == 0.5 and tr.records[0].theta_or_tau == 1.0
    np.testing.assert_allclose(tr.final_x, [0.0])


@pytest.mark.parametrize("n", [3, 10, 50])
def test_msd2_jos1_one_step(n):
    tr = run_msd2(get_problem("JOS1", n), np.full(n, 3.0))
    assert tr.converged and tr.counters.iterations == 1
    r = tr.records[0]
    assert r.t == 1.0
    assert r.theta_or_tau == pytest.approx(n / 2)
    np.testing.assert_allclose(tr.final_x, np.full(n, 2.0), atol=1e-12)
    assert (tr.counters.f_evals, tr.counters.g_evals) == (2, 3)


def test_msd2_theta_rules():
    assert msd2_theta(2.0, 2.0) == 1.0
    assert msd2_theta(2.0, 0.5) == 4.0
    assert msd2_theta(2.0, -1.0) == 1.0
    assert msd2_theta(2.0, 0.0) == 1.0
    assert msd2_theta(2.0, 1e-13) == 1.0  # below q_floor = 1e-12 * max(1, p)
    assert msd2_theta(2.0, 0.5, cap=3.0) == 3.0


def test_msd2_nonconvex_patch_takes_plain_step():
    cfg = SolverConfig(max_iters=1)
    x0 = [1.0, 0.5]
    a, b = run_msd2(Saddle(), x0, cfg), run_msd(Saddle(), x0, cfg)
    assert a.records[0].theta_or_tau == 1.0
    np.testing.assert_array_equal(a.final_x, b.final_x)
    assert a.status is Status.ITERATION_CAP


def test_theta_cap():
    tr = run_msd2(get_problem("JOS1", 10), np.full(10, 3.0), SolverConfig(theta_cap=2.0))
    assert tr.records[0].theta_or_tau == 2.0


def test_linesearch_failure_status():
    tr = run_msd(Square(), [1.0], SolverConfig(max_linesearch_steps=1))
    assert tr.status is Status.LINESEARCH_FAILURE and not tr.converged
    assert len(tr.records) == tr.counters.iterations + 1


def test_numerical_failure_status():
    tr = run_msd(get_problem("DGO2"), [10.0])
    assert tr.status is Status.NUMERICAL_FAILURE
    assert len(tr.records) == tr.counters.iterations + 1


def test_store_iterates():
    tr = run_msd(get_problem("BK1"), [6.0, 6.0], SolverConfig(store_iterates=True))
    np.testing.assert_allclose([r.x for r in tr.records], [[6.0, 6.0], [5.0, 5.0]])
    assert run_msd(get_problem("BK1"), [6.0, 6.0]).records[0].x is None


def test_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        run_msd(get_problem("BK1"), [1.0, 2.0, 3.0])


SMALL = [name for name in TABLE_PROBLEMS if get_problem(name).n <= 100]


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("kind", ALL_KINDS)
def test_trace_invariants(name, kind):
    p = get_problem(name)
    cfg = SolverConfig(kind=kind)
    for x0 in sample_starts(p, SamplerSpec(seed=11, count=3)):
        tr = run(p, x0, cfg)
        assert len(tr.records) == tr.counters.iterations + 1
        assert [r.k for r in tr.records] == list(range(len(tr.records)))
        for r in tr.records:
            assert r.gamma <= 0.0 or np.isnan(r.gamma)
            if r.t is not None:
                assert 0.0 < r.t <= 1.0
            if kind is not SolverKind.MSD and r.theta_or_tau is not None:
                assert r.theta_or_tau > 0.0
        assert tr.records[-1].t is None
        if tr.converged:
            assert abs(solve_dual(p.jacobian(tr.final_x)).gamma) <= cfg.gamma_tol
            assert abs(tr.final_gamma) <= cfg.gamma_tol
        if kind is not SolverKind.MSD2:
            Fs = [r.F_x for r in tr.records]
            for a, b in zip(Fs, Fs[1:]):
                if a is not None and b is not None:
                    assert np.all(b < a)


def test_runs_are_deterministic():
    p = get_problem("Far1")
    x0 = sample_starts(p, SamplerSpec(seed=1, count=1))[0]
    for kind in ALL_KINDS:
        a, b = run(p, x0, SolverConfig(kind=kind)), run(p, x0, SolverConfig(kind=kind))
        np.testing.assert_array_equal(a.final_x, b.final_x)
        assert (a.counters.iterations, a.counters.f_evals, a.counters.g_evals) == (
            b.counters.iterations,
            b.counters.f_evals,
            b.counters.g_evals,
        )
