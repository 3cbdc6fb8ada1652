import math

import numpy as np
import pytest

from irrigen.errors import DiagnosticWarning
from irrigen.phase import Trajectory, ar1_ensemble, coordinate, onsager_estimate

GAMMA, DT = 2.0, 0.1


def discrete_lag_sum(gamma, dt, kmax, variance=1.0):
    """1/2 dt sum_{|k| <= kmax} variance * exp(-gamma |k| dt)."""
    phi = math.exp(-gamma * dt)
    return 0.5 * dt * variance * (1.0 + 2.0 * sum(phi ** k for k in range(1, kmax + 1)))


@pytest.fixture(scope="module")
def ou_data():
    return ar1_ensemble(np.random.default_rng(0), 4000, 200, GAMMA, DT, channels=2)


def test_oracle_sanity():
    # the discretized lag sum tends to 1/2 * integral exp(-2|t|) dt = 0.5
    assert discrete_lag_sum(GAMMA, 1e-4, 200_000) == pytest.approx(0.5, rel=1e-6)
    assert discrete_lag_sum(GAMMA, DT, 29) == pytest.approx(0.5, rel=1e-2)


def test_white_noise_lag_zero():
    rng = np.random.default_rng(1)
    v, dt = 2.5, 0.2
    data = rng.normal(0.0, math.sqrt(v), size=(200, 500))
    est = onsager_estimate(data, 0, 0, dt=dt, t_max=dt)
    centred = data - data.mean()
    assert est == pytest.approx(0.5 * dt * np.mean(centred ** 2), rel=1e-12)
    assert est == pytest.approx(0.5 * v * dt, rel=0.02)


def test_exponential_correlation(ou_data):
    est = onsager_estimate(ou_data, 0, 0, dt=DT, t_max=3.0)
    assert est == pytest.approx(discrete_lag_sum(GAMMA, DT, 29), rel=0.05)
    assert est == pytest.approx(0.5, rel=0.05)


def test_independent_channels(ou_data):
    est, se = onsager_estimate(ou_data, 0, 1, dt=DT, t_max=3.0, return_stderr=True)
    assert se > 0
    assert abs(est) < 3 * se


def test_standard_error_is_plausible(ou_data):
    # batch estimates of the diagonal coefficient scatter by roughly se * sqrt(batches)
    est, se = onsager_estimate(ou_data, 0, 0, dt=DT, t_max=3.0, return_stderr=True)
    assert 1e-4 < se < 0.05


def test_symmetric_under_index_swap(ou_data):
    mixed = np.stack([ou_data[..., 0], 0.6 * ou_data[..., 0] + 0.8 * ou_data[..., 1]], axis=-1)
    lij = onsager_estimate(mixed, 0, 1, dt=DT, t_max=2.0)
    lji = onsager_estimate(mixed, 1, 0, dt=DT, t_max=2.0)
    assert lij == pytest.approx(lji, rel=1e-12)
    assert lij == pytest.approx(0.6 * 0.5, rel=0.1)


def test_trajectory_input_matches_array(ou_data):
    sub = ou_data[:50]
    trajs = [Trajectory(member, step=DT) for member in sub]
    assert onsager_estimate(trajs, 0, 1, t_max=1.0) == onsager_estimate(sub, 0, 1, dt=DT, t_max=1.0)


def test_custom_observables(ou_data):
    obs = [coordinate(1), lambda x: 2.0 * x[1]]
    base = onsager_estimate(ou_data[:500], 1, 1, dt=DT, t_max=1.0)
    scaled = onsager_estimate(ou_data[:500], 0, 1, observables=obs, dt=DT, t_max=1.0)
    assert scaled == pytest.approx(2.0 * base, rel=1e-12)


def test_too_short_for_t_max():
    with pytest.raises(ValueError, match="too short"):
        onsager_estimate(np.zeros((3, 10)), 0, 0, dt=0.1, t_max=5.0)


def test_drift_warning():
    rng = np.random.default_rng(2)
    data = rng.normal(size=(20, 100)) + np.linspace(0, 5, 100)
    with pytest.warns(DiagnosticWarning, match="drift"):
        onsager_estimate(data, 0, 0, dt=1.0, t_max=3.0)


def test_mismatched_trajectories_rejected():
    with pytest.raises(ValueError):
        onsager_estimate([Trajectory(np.zeros(10)), Trajectory(np.zeros(12))], 0, 0)
