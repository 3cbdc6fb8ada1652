"""Built-in invariant suite run by ``irrigen`` in verify mode.

Every check is deterministic given the seed and returns a CheckResult with
the measured quantity and the tolerance it was held to.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import exergy, thermo
from .phase import (
    EnsembleMeasure,
    ar1_ensemble,
    birkhoff_residual,
    contraction_rate_map,
    coordinate,
    entropy_production,
    laws,
    onsager_estimate,
)
from .variational import (
    OptimizerConfig,
    least_action_check,
    maximize_entropy_generation,
    quadratic_family,
    stationarity_check,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool


def rel_err(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def random_system(rng, max_n=5, low=-10.0, high=10.0):
    n = int(rng.integers(1, max_n + 1))
    state = thermo.GeneralizedState(rng.uniform(low, high, n))
    tensors = thermo.OnsagerTensors(rng.uniform(low, high, (n, n)),
                                    rng.uniform(low, high, (n, n, n)))
    return state, tensors


def random_balance(rng):
    return exergy.ProcessBalance(
        q_r=rng.uniform(-1e4, 1e4), t_r=rng.uniform(200, 2000), t_a=rng.uniform(200, 400),
        delta_h=rng.uniform(-1e4, 1e4), delta_s=rng.uniform(-50, 50),
        delta_ek=rng.uniform(-1e3, 1e3), delta_eg=rng.uniform(-1e3, 1e3),
        w=rng.uniform(-1e4, 1e4), t_ref=rng.uniform(200, 400))


def check_duality(rng, instances):
    worst = 0.0
    for _ in range(instances):
        state, tensors = random_system(rng)
        rho_l = thermo.lagrangian_density(state, tensors)
        worst = max(worst, rel_err(thermo.hamiltonian_density(state, tensors), -rho_l))
        b = random_balance(rng)
        h, lag = exergy.thermodynamic_hamiltonian(b), exergy.thermodynamic_lagrangian(b)
        worst = max(worst, rel_err(h, -lag),
                    rel_err(h, b.t_ref * exergy.entropy_generation(b)))
    return CheckResult("hamiltonian_lagrangian_duality", worst, 1e-12, worst < 1e-12)


def check_decomposition(rng, instances):
    worst = 0.0
    for _ in range(instances):
        state, tensors = random_system(rng)
        direct = thermo.lagrangian_density(state, tensors)
        split = (thermo.entropy_rate_density(state, tensors)
                 - thermo.dissipative_potential(state, tensors))
        worst = max(worst, rel_err(direct, split))
    return CheckResult("density_decomposition", worst, 1e-12, worst < 1e-12)


def check_exergy_oracle():
    b = exergy.ProcessBalance(q_r=1000.0, t_r=500.0, t_a=300.0, t_ref=300.0)
    err = max(abs(exergy.entropy_generation(b) - 4.0 / 3.0), abs(exergy.lost_work(b) - 400.0))
    return CheckResult("exergy_oracle", err, 1e-9, err < 1e-9)


def check_equilibrium_null(rng, samples=10_000):
    kb1 = thermo.PhysicalConstants(k_b=1.0, t_ref=300.0)
    cloud = EnsembleMeasure.uniform(rng.normal(size=(samples, 2)))
    exact = max(abs(entropy_production(laws.rotation_flow(), cloud, kb1)),
                abs(entropy_production(laws.shear_flow(), cloud, kb1)))
    fd = max(abs(entropy_production(laws.rotation_flow(analytic=False), cloud, kb1)),
             abs(entropy_production(laws.shear_flow(analytic=False), cloud, kb1)))
    torus = EnsembleMeasure.uniform(rng.uniform(size=(samples, 2)))
    cmap = abs(contraction_rate_map(laws.standard_map(), torus, kb1))
    return [
        CheckResult("equilibrium_null_analytic", exact, 1e-10, exact < 1e-10),
        CheckResult("equilibrium_null_fd", fd, 1e-6, fd < 1e-6),
        CheckResult("equilibrium_null_standard_map", cmap, 1e-8, cmap < 1e-8),
    ]


def check_linear_contraction(rng, samples=1000):
    kb1 = thermo.PhysicalConstants(k_b=1.0, t_ref=300.0)
    cloud = EnsembleMeasure.uniform(rng.normal(size=(samples, 1)) * 3.0)
    exact = abs(entropy_production(laws.linear_flow(0.5), cloud, kb1) - 0.5)
    fd = abs(entropy_production(laws.linear_flow(0.5, analytic=False), cloud, kb1) - 0.5)
    return [
        CheckResult("linear_contraction_analytic", exact, 0.0, exact == 0.0),
        CheckResult("linear_contraction_fd", fd, 1e-6, fd < 1e-6),
    ]


def check_birkhoff(horizon, samples=100_000):
    grid = EnsembleMeasure.uniform_grid([0.0], [1.0], samples)
    res = birkhoff_residual(laws.golden_rotation(), [0.0], grid, coordinate(0), horizon)
    return CheckResult("birkhoff_golden_rotation", res, 1e-3, res < 1e-3)


def check_onsager(rng, members=10_000, steps=200, dt=0.1, t_max=3.0):
    data = ar1_ensemble(rng, members, steps, gamma=2.0, dt=dt, channels=2)
    diag = onsager_estimate(data, 0, 0, dt=dt, t_max=t_max)
    cross, se = onsager_estimate(data, 0, 1, dt=dt, t_max=t_max, return_stderr=True)
    rel = abs(diag - 0.5) / 0.5
    z = abs(cross) / se
    return [
        CheckResult("onsager_exponential_correlation", rel, 0.05, rel < 0.05),
        CheckResult("onsager_independent_channels_z", z, 3.0, z < 3.0),
    ]


def check_max_entropy_generation(sequential):
    family = quadratic_family([1.0])
    opt = maximize_entropy_generation(family, OptimizerConfig(), sequential=sequential)
    out = [CheckResult("max_entropy_generation_argmax", abs(opt.theta[0] - 1.0),
                       1e-6, abs(opt.theta[0] - 1.0) < 1e-6)]
    stat = stationarity_check(family, opt.theta, 1e-4)
    out.append(CheckResult("stationarity_violation", stat.max_violation, 1e-8,
                           stat.max_violation <= 1e-8))
    la = least_action_check(family, opt.theta, t_ref=300.0)
    out.append(CheckResult("least_action_minimal", float(la.is_minimal), 1.0, la.is_minimal))
    return out


def check_mass_conservation(steps=10_000, dt=1e-4):
    rho = np.array([1.0, 2.0, 0.5])
    vol = np.array([1.0, 0.5, 2.0])
    div = np.array([0.3, -0.6, 0.3])  # rho_i V_i div_i sums to zero
    system = thermo.CompartmentSystem(rho, vol, div, source=0.0, div_barycentric=0.0)
    m0 = thermo.total_mass(system)
    for _ in range(steps):
        system = thermo.step_compartments(system, dt)
    drift = abs(thermo.total_mass(system) - m0) / m0
    return CheckResult("mass_conservation", drift, 1e-12, drift < 1e-12)


def run_suite(seed=0, instances=1000, horizon=100_000, sequential=True):
    rng = np.random.default_rng(seed)
    results = [
        check_duality(rng, instances),
        check_decomposition(rng, instances),
        check_exergy_oracle(),
        *check_equilibrium_null(rng),
        *check_linear_contraction(rng),
        check_birkhoff(horizon),
        *check_onsager(rng),
        *check_max_entropy_generation(sequential),
        check_mass_conservation(),
    ]
    for r in results:
        if not math.isfinite(r.value):
            raise ArithmeticError(f"check {r.name} produced {r.value}")
    return results
