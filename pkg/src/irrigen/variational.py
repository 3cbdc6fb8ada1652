"""Maximum entropy generation over families of stationary states.

Stability of a stationary state is read as: no admissible variation of the
state parameters increases the entropy generation.  With a constant
reference temperature the same point minimizes the thermodynamic action
A = integral of L dt, L = -T_ref * dS_irr.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import minimize

from ._workers import max_workers
from .exergy import ProcessBalance, entropy_generation


@dataclass(frozen=True)
class StateFamily:
    """Parameterized stationary states theta -> dS_irr(theta).

    ``eval`` may return a ProcessBalance, which is reduced through the
    entropy-generation balance, or the scalar dS_irr directly.
    """
    dim: int
    eval: Callable[[np.ndarray], object]
    bounds: Sequence[tuple]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(bounds) != self.dim or any(not lo < hi for lo, hi in bounds):
            raise ValueError("need one (low, high) interval with low < high per parameter")
        object.__setattr__(self, "bounds", bounds)

    @property
    def lower(self):
        return np.array([b[0] for b in self.bounds])

    @property
    def upper(self):
        return np.array([b[1] for b in self.bounds])

    def entropy_generation(self, theta):
        out = self.eval(np.asarray(theta, dtype=float))
        if isinstance(out, ProcessBalance):
            out = entropy_generation(out)
        value = float(out)
        if not math.isfinite(value):
            raise ValueError(f"family is not finite at theta={theta}")
        return value


def quadratic_family(center, peak=2.0, lower=-5.0, upper=5.0):
    """dS_irr(theta) = peak - |theta - center|^2 on a box."""
    center = np.atleast_1d(np.asarray(center, dtype=float))
    return StateFamily(
        dim=center.size,
        eval=lambda th: peak - float(np.sum((th - center) ** 2)),
        bounds=[(lower, upper)] * center.size,
    )


@dataclass(frozen=True)
class OptimizerConfig:
    max_iters: int = 200
    tol_value: float = 1e-15
    tol_param: float = 1e-10
    fd_step: float = 1e-4
    seed: int = 0
    n_starts: int = 4

    def __post_init__(self):
        if not (self.tol_value > 0 and self.tol_param > 0 and self.fd_step > 0):
            raise ValueError("tolerances and fd_step must be positive")
        if self.max_iters < 1 or self.n_starts < 1:
            raise ValueError("max_iters and n_starts must be >= 1")


@dataclass
class OptimizationResult:
    theta: np.ndarray
    value: float
    converged: bool
    trace: list = field(default_factory=list)  # (start, theta, value) per evaluation


class _BudgetExhausted(Exception):
    pass


def _run_start(family, x0, budget, cfg, start_index):
    trace = []

    def objective(theta):
        if len(trace) >= budget:
            raise _BudgetExhausted
        theta = np.clip(theta, family.lower, family.upper)
        value = family.entropy_generation(theta)
        trace.append((start_index, theta.copy(), value))
        return -value

    converged = False
    try:
        res = minimize(objective, x0, method="Nelder-Mead", bounds=family.bounds,
                       options={"xatol": cfg.tol_param, "fatol": cfg.tol_value,
                                "maxfev": budget, "maxiter": cfg.max_iters})
        converged = bool(res.success)
    except _BudgetExhausted:
        pass
    best = max(trace, key=lambda rec: rec[2]) if trace else None
    return best, converged, trace


def maximize_entropy_generation(family, config=OptimizerConfig(), sequential=False):
    """Multi-start Nelder-Mead search for a local maximum of dS_irr.

    Starts are the box centre followed by seeded bounds-uniform points.  The
    total evaluation budget is ``max_iters * (dim + 2)``, split evenly over
    the starts.  Ties between starts resolve to the lexicographically
    smallest parameter vector.
    """
    rng = np.random.default_rng(config.seed)
    lo, hi = family.lower, family.upper
    starts = [0.5 * (lo + hi)]
    starts += [rng.uniform(lo, hi) for _ in range(config.n_starts - 1)]
    total = config.max_iters * (family.dim + 2)
    budget = max(family.dim + 1, total // len(starts))

    args = [(family, x0, budget, config, k) for k, x0 in enumerate(starts)]
    workers = min(max_workers(sequential), len(args))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            runs = list(pool.map(lambda a: _run_start(*a), args))
    else:
        runs = [_run_start(*a) for a in args]

    trace = [rec for _, _, t in runs for rec in t]
    candidates = [(best, conv) for best, conv, _ in runs if best is not None]
    top = max(best[2] for best, _ in candidates)
    winners = [(best, conv) for best, conv in candidates if best[2] == top]
    winners.sort(key=lambda bc: tuple(bc[0][1]))
    best, conv = winners[0]
    return OptimizationResult(theta=best[1], value=best[2], converged=conv, trace=trace)


@dataclass(frozen=True)
class StationarityReport:
    max_violation: float
    gradient_norm: float
    one_sided: bool


def stationarity_check(family, theta, fd_step=1e-4):
    """Probe theta +- fd_step along each axis.

    ``max_violation`` is the largest increase of dS_irr over the probes; at a
    genuine maximum it is bounded by a curvature constant times fd_step**2.
    Probes falling outside the box are dropped and ``one_sided`` is set.
    """
    theta = np.asarray(theta, dtype=float)
    base = family.entropy_generation(theta)
    lo, hi = family.lower, family.upper
    violation = -math.inf
    grad = np.zeros(family.dim)
    one_sided = False
    for k in range(family.dim):
        vals = {}
        for sign in (+1, -1):
            probe = theta.copy()
            probe[k] += sign * fd_step
            if probe[k] < lo[k] or probe[k] > hi[k]:
                one_sided = True
                continue
            vals[sign] = family.entropy_generation(probe)
            violation = max(violation, vals[sign] - base)
        if len(vals) == 2:
            grad[k] = (vals[1] - vals[-1]) / (2 * fd_step)
        elif 1 in vals:
            grad[k] = (vals[1] - base) / fd_step
        elif -1 in vals:
            grad[k] = (base - vals[-1]) / fd_step
    if violation == -math.inf:
        violation = 0.0
    return StationarityReport(max_violation=float(violation),
                              gradient_norm=float(np.linalg.norm(grad)),
                              one_sided=one_sided)


def action(lagrangian_series, dt):
    """Trapezoidal action integral of a uniformly sampled Lagrangian."""
    series = np.asarray(lagrangian_series, dtype=float)
    if series.ndim != 1 or series.size < 2:
        raise ValueError("action needs at least two Lagrangian samples")
    if not dt > 0:
        raise ValueError("dt must be positive")
    return float(trapezoid(series, dx=dt))


@dataclass(frozen=True)
class LeastActionReport:
    action_at_optimum: float
    probe_actions: tuple
    probes: tuple
    is_minimal: bool


def least_action_check(family, theta_star, t_ref, horizon=1.0, dt=0.01,
                       probe_steps=(1e-4, 1e-3, 1e-2, 1e-1)):
    """Compare A(theta*) against A at axis probes theta* +- s e_k.

    Each state is stationary, so L(t) = -t_ref * dS_irr(theta) is constant
    over [0, horizon].
    """
    theta_star = np.asarray(theta_star, dtype=float)
    n = int(round(horizon / dt)) + 1

    def action_at(theta):
        value = -t_ref * family.entropy_generation(theta)
        return action(np.full(n, value), dt)

    a_star = action_at(theta_star)
    lo, hi = family.lower, family.upper
    probes, actions = [], []
    for s in probe_steps:
        for k in range(family.dim):
            for sign in (+1, -1):
                probe = theta_star.copy()
                probe[k] += sign * s
                if lo[k] <= probe[k] <= hi[k]:
                    probes.append(tuple(probe))
                    actions.append(action_at(probe))
    return LeastActionReport(
        action_at_optimum=a_star,
        probe_actions=tuple(actions),
        probes=tuple(probes),
        is_minimal=all(a_star <= a for a in actions),
    )


def trace_to_csv(trace):
    """Rows ``iteration,theta0..,value`` with 17 significant digits."""
    if not trace:
        return "iteration,value\n"
    dim = len(trace[0][1])
    lines = ["iteration," + ",".join(f"theta{k}" for k in range(dim)) + ",value"]
    for it, (_, theta, value) in enumerate(trace):
        lines.append(",".join([str(it)] + [format(float(t), ".17g") for t in theta]
                              + [format(float(value), ".17g")]))
    return "\n".join(lines) + "\n"
