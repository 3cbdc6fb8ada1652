"""Green-Kubo style estimate of Onsager coefficients from correlation sums."""
from __future__ import annotations

import warnings

import numpy as np

from ..errors import DiagnosticWarning
from .dynamics import Trajectory
from .measure import as_observable, coordinate

DRIFT_TOL = 0.1  # allowed half-to-half mean shift, in units of the channel std


def _stack(trajectories):
    if isinstance(trajectories, np.ndarray):
        data = np.asarray(trajectories, dtype=float)
        if data.ndim == 2:
            data = data[:, :, None]
        return data, 1.0
    trajs = [trajectories] if isinstance(trajectories, Trajectory) else list(trajectories)
    if not trajs:
        raise ValueError("need at least one trajectory")
    lengths = {len(t) for t in trajs}
    steps = {t.step for t in trajs}
    if len(lengths) != 1 or len(steps) != 1:
        raise ValueError("trajectories must share length and time step")
    return np.stack([t.points for t in trajs]), steps.pop()


def _channel(data, obs):
    m, n, d = data.shape
    return obs.over(data.reshape(m * n, d)).reshape(m, n)


def _cross(a, b, lag):
    """<a(s + lag) b(s)> over members and admissible s."""
    n = a.shape[1]
    return float(np.mean(a[:, lag:] * b[:, :n - lag]))


def _lag_sum(a, b, kmax, dt):
    total = _cross(a, b, 0)
    for k in range(1, kmax + 1):
        total += _cross(a, b, k) + _cross(b, a, k)
    return 0.5 * dt * total


def onsager_estimate(trajectories, i, j, observables=None, t_max=None, dt=None,
                     return_stderr=False, n_batches=20):
    """Estimate L_ij = 1/2 integral of <sigma_i(t + s) sigma_j(s)> over all t.

    Parameters
    ----------
    trajectories : sequence of Trajectory, or array (members, steps[, dim])
        Stationary samples recorded at zero external forcing.
    i, j : int
        Channel indices into ``observables`` (default: coordinates).
    t_max : float
        Lags with |t| < t_max enter the two-sided sum.  Defaults to half the
        trajectory duration.
    dt : float
        Sampling interval; defaults to the trajectories' ``step``.
    return_stderr : bool
        Also return a standard error from batch means over ensemble members.

    Channels are centred by their ensemble-time mean.  A shift of the mean
    between the first and second half of the record beyond ``DRIFT_TOL``
    standard deviations triggers a DiagnosticWarning.
    """
    data, step = _stack(trajectories)
    dt = step if dt is None else float(dt)
    if not dt > 0:
        raise ValueError("dt must be positive")
    m, n, d = data.shape
    if observables is None:
        obs_i, obs_j = coordinate(i), coordinate(j)
    else:
        obs_i, obs_j = as_observable(observables[i]), as_observable(observables[j])
    if t_max is None:
        t_max = 0.5 * (n - 1) * dt
    kmax = int(np.ceil(t_max / dt)) - 1
    if kmax >= n:
        raise ValueError(
            f"trajectories of {n} points are too short for t_max={t_max} at dt={dt}")
    kmax = max(kmax, 0)

    a = _channel(data, obs_i)
    b = a if (obs_i is obs_j or (observables is None and i == j)) else _channel(data, obs_j)
    for name, ch in (("i", a), ("j", b)):
        half = n // 2
        if half >= 1:
            shift = abs(ch[:, :half].mean() - ch[:, half:].mean())
            if shift > DRIFT_TOL * (ch.std() + 1e-300):
                warnings.warn(f"channel {name} mean drifts by {shift:.3g}; "
                              "record may not be stationary",
                              DiagnosticWarning, stacklevel=2)
    a = a - a.mean()
    b = b - b.mean()
    value = _lag_sum(a, b, kmax, dt)
    if not return_stderr:
        return value
    nb = min(n_batches, m)
    if nb < 2:
        return value, float("nan")
    batches = np.array_split(np.arange(m), nb)
    est = np.array([_lag_sum(a[idx], b[idx], kmax, dt) for idx in batches])
    return value, float(est.std(ddof=1) / np.sqrt(nb))


def ar1_ensemble(rng, members, steps, gamma, dt, variance=1.0, channels=1):
    """Stationary Ornstein-Uhlenbeck samples, correlation variance*exp(-gamma|t|).

    Exact discretization: x_{k+1} = phi x_k + sqrt(variance (1 - phi^2)) eps
    with phi = exp(-gamma dt).  Independent channels share no noise.
    Returns an array of shape (members, steps, channels).
    """
    phi = np.exp(-gamma * dt)
    noise_scale = np.sqrt(variance * (1.0 - phi * phi))
    out = np.empty((members, steps, channels))
    out[:, 0] = rng.normal(0.0, np.sqrt(variance), size=(members, channels))
    eps = rng.normal(0.0, noise_scale, size=(members, steps - 1, channels))
    for k in range(1, steps):
        out[:, k] = phi * out[:, k - 1] + eps[:, k - 1]
    return out
