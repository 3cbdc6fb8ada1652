import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irrigen.exergy import ProcessBalance
from irrigen.variational import (
    OptimizerConfig,
    StateFamily,
    action,
    least_action_check,
    maximize_entropy_generation,
    quadratic_family,
    stationarity_check,
    trace_to_csv,
)

CONSTANT = StateFamily(1, lambda th: 3.0, [(-5.0, 5.0)])


def test_action_examples():
    assert action(np.full(101, -400.0), 0.01) == pytest.approx(-400.0, rel=1e-14)
    t = np.linspace(0.0, 1.0, 1001)
    assert abs(action(t, t[1] - t[0]) - 0.5) < 1e-6
    assert action(np.zeros(10), 0.1) == 0.0
    with pytest.raises(ValueError):
        action([], 0.1)
    with pytest.raises(ValueError):
        action([1.0, 2.0], 0.0)


def test_maximize_quadratic():
    res = maximize_entropy_generation(quadratic_family([1.0]))
    assert res.converged
    assert abs(res.theta[0] - 1.0) < 1e-6
    assert res.value == pytest.approx(2.0, abs=1e-12)


def test_maximize_constant_family():
    res = maximize_entropy_generation(CONSTANT)
    assert res.converged
    assert res.value == 3.0
    assert -5.0 <= res.theta[0] <= 5.0


def test_maximize_two_parameter_vertex():
    fam = StateFamily(2, lambda th: 1.0 - 2.0 * (th[0] - 0.3) ** 2 - (th[1] + 1.2) ** 2
                      - 0.5 * (th[0] - 0.3) * (th[1] + 1.2), [(-4, 4), (-4, 4)])
    res = maximize_entropy_generation(fam)
    assert np.max(np.abs(res.theta - [0.3, -1.2])) < 1e-5


def test_process_balance_family():
    # heat q drawn from T_r = 500 K; dS_irr peaks where the work term vanishes
    def balance(th):
        return ProcessBalance(q_r=1000.0, t_r=500.0, t_a=300.0, w=300.0 * (th[0] - 2.0) ** 2)
    res = maximize_entropy_generation(StateFamily(1, balance, [(0.0, 5.0)]))
    assert abs(res.theta[0] - 2.0) < 1e-6
    assert res.value == pytest.approx(4.0 / 3.0, abs=1e-12)


def test_optimum_on_boundary():
    fam = StateFamily(1, lambda th: th[0], [(0.0, 1.0)])
    res = maximize_entropy_generation(fam)
    assert res.theta[0] == pytest.approx(1.0, abs=1e-8)
    rep = stationarity_check(fam, res.theta, 1e-4)
    assert rep.one_sided


@settings(max_examples=15, deadline=None)
@given(st.floats(-2.0, 2.0))
def test_translation_invariance(shift):
    base = maximize_entropy_generation(quadratic_family([0.5]))
    moved = maximize_entropy_generation(quadratic_family([0.5 + shift]))
    assert abs((moved.theta[0] - shift) - base.theta[0]) < 1e-6


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_budget_accounting(dim):
    cfg = OptimizerConfig(max_iters=30)
    res = maximize_entropy_generation(quadratic_family(np.linspace(-1, 1, dim)), cfg)
    assert len(res.trace) <= cfg.max_iters * (dim + 2)


def test_budget_exhaustion_reports_best_so_far():
    cfg = OptimizerConfig(max_iters=3, n_starts=2)
    res = maximize_entropy_generation(quadratic_family([1.0, 2.0]), cfg)
    assert not res.converged
    assert res.value == max(v for _, _, v in res.trace)


def test_parallel_and_sequential_agree():
    fam = quadratic_family([1.0, -0.5])
    a = maximize_entropy_generation(fam, sequential=True)
    b = maximize_entropy_generation(fam, sequential=False)
    assert a.theta.tobytes() == b.theta.tobytes()
    assert trace_to_csv(a.trace) == trace_to_csv(b.trace)


def test_stationarity_examples():
    fam = quadratic_family([1.0])
    at_max = stationarity_check(fam, [1.0], 1e-4)
    assert at_max.max_violation <= 1e-10
    off = stationarity_check(fam, [0.0], 1e-4)
    # slope 2 at theta = 0: f(h) - f(0) = 2h - h^2
    assert off.max_violation == pytest.approx(2 * 1e-4 - 1e-8, rel=1e-6)
    assert off.gradient_norm == pytest.approx(2.0, rel=1e-6)
    assert stationarity_check(CONSTANT, [2.0], 1e-4).max_violation == 0.0


@settings(max_examples=30, deadline=None)
@given(st.floats(-3, 3), st.floats(0.1, 10.0))
def test_stationarity_bounded_by_curvature(center, curvature):
    fam = StateFamily(1, lambda th: -curvature * (th[0] - center) ** 2, [(-5, 5)])
    res = maximize_entropy_generation(fam)
    h = 1e-4
    assert stationarity_check(fam, res.theta, h).max_violation <= curvature * h * h


def test_least_action_examples():
    fam = quadratic_family([1.0])
    rep = least_action_check(fam, [1.0], t_ref=300.0, horizon=2.0, dt=0.01)
    assert rep.action_at_optimum == pytest.approx(-300.0 * 2.0 * 2.0, rel=1e-12)
    assert rep.is_minimal
    assert all(rep.action_at_optimum < a for a in rep.probe_actions)
    flat = least_action_check(CONSTANT, [0.0], t_ref=300.0)
    assert len(set(flat.probe_actions + (flat.action_at_optimum,))) == 1
    assert flat.action_at_optimum == pytest.approx(-300.0 * 3.0 * 1.0, rel=1e-12)


def test_argmax_is_argmin_of_action():
    fam = quadratic_family([0.7, -1.3], peak=5.0)
    res = maximize_entropy_generation(fam)
    assert least_action_check(fam, res.theta, t_ref=250.0).is_minimal
    assert not least_action_check(fam, res.theta + 0.3, t_ref=250.0).is_minimal


def test_trace_csv_layout():
    res = maximize_entropy_generation(quadratic_family([1.0, 2.0]), OptimizerConfig(max_iters=5))
    lines = trace_to_csv(res.trace).splitlines()
    assert lines[0] == "iteration,theta0,theta1,value"
    assert len(lines) == len(res.trace) + 1
    assert lines[1].startswith("0,")


def test_family_validation():
    with pytest.raises(ValueError):
        StateFamily(0, lambda th: 0.0, [])
    with pytest.raises(ValueError):
        StateFamily(1, lambda th: 0.0, [(1.0, 0.0)])
    with pytest.raises(ValueError):
        StateFamily(1, lambda th: float("nan"), [(0, 1)]).entropy_generation([0.5])
    with pytest.raises(ValueError):
        OptimizerConfig(tol_value=0.0)
