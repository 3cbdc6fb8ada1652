"""Acceptance criteria, one test each, at full scale.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines.
"""
import math
import time

import numpy as np
import pytest

from irrigen import exergy, thermo
from irrigen.cli import main
from irrigen.phase import (
    EnsembleMeasure,
    ar1_ensemble,
    contraction_rate_map,
    coordinate,
    ensemble_average,
    entropy_production,
    laws,
    onsager_estimate,
    time_average,
)
from irrigen.variational import (
    least_action_check,
    maximize_entropy_generation,
    quadratic_family,
    stationarity_check,
)

KB1 = thermo.PhysicalConstants(k_b=1.0, t_ref=300.0)


def verdict(number, name, ok, detail):
    print(f"\nACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, f"criterion {number} ({name}) failed: {detail}"


def rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


@pytest.fixture(scope="module")
def random_systems():
    rng = np.random.default_rng(2024)
    out = []
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        out.append((thermo.GeneralizedState(rng.uniform(-10, 10, n)),
                    thermo.OnsagerTensors(rng.uniform(-10, 10, (n, n)),
                                          rng.uniform(-10, 10, (n, n, n)))))
    return out


def test_01_hamiltonian_lagrangian_duality(random_systems):
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    worst = 0.0
    for state, tensors in random_systems:
        worst = max(worst, rel(thermo.hamiltonian_density(state, tensors),
                               -thermo.lagrangian_density(state, tensors)))
    for _ in range(1000):
        b = exergy.ProcessBalance(
            q_r=rng.uniform(-1e4, 1e4), t_r=rng.uniform(100, 2000),
            t_a=rng.uniform(200, 400), delta_h=rng.uniform(-1e4, 1e4),
            delta_s=rng.uniform(-50, 50), delta_ek=rng.uniform(-1e3, 1e3),
            delta_eg=rng.uniform(-1e3, 1e3), w=rng.uniform(-1e4, 1e4),
            t_ref=rng.uniform(200, 400))
        h = exergy.thermodynamic_hamiltonian(b)
        worst = max(worst, rel(h, -exergy.thermodynamic_lagrangian(b)),
                    rel(h, b.t_ref * exergy.entropy_generation(b)))
    elapsed = time.perf_counter() - t0
    verdict(1, "H = -L = T_ref dS_irr", worst < 1e-12 and elapsed < 1.0,
            f"max rel err {worst:.3g} (< 1e-12), {elapsed:.3f} s (< 1 s)")


def test_02_density_decomposition(random_systems):
    worst = 0.0
    for state, tensors in random_systems:
        direct = thermo.lagrangian_density(state, tensors)
        split = (thermo.entropy_rate_density(state, tensors)
                 - thermo.dissipative_potential(state, tensors))
        worst = max(worst, rel(direct, split))
    verdict(2, "rho_L = entropy rate - psi", worst < 1e-12,
            f"max rel err {worst:.3g} (< 1e-12)")


def test_03_exergy_oracle():
    b = exergy.ProcessBalance(q_r=1000.0, t_r=500.0, t_a=300.0, t_ref=300.0)
    hand_s = (1000.0 / 300.0) * (1.0 - 300.0 / 500.0)  # = 4/3
    err_s = abs(exergy.entropy_generation(b) - 4.0 / 3.0)
    err_w = abs(exergy.lost_work(b) - 400.0)
    ok = err_s < 1e-9 and err_w < 1e-9 and abs(hand_s - 4.0 / 3.0) < 1e-12
    verdict(3, "exergy oracle", ok, f"|dS_irr - 4/3| = {err_s:.3g}, |W_lost - 400| = {err_w:.3g}")


def test_04_equilibrium_null():
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    cloud = EnsembleMeasure.uniform(rng.normal(size=(10_000, 2)) * 3)
    exact = max(abs(entropy_production(laws.rotation_flow(), cloud, KB1)),
                abs(entropy_production(laws.shear_flow(), cloud, KB1)))
    fd = max(abs(entropy_production(laws.rotation_flow(analytic=False), cloud, KB1)),
             abs(entropy_production(laws.shear_flow(analytic=False), cloud, KB1)))
    torus = EnsembleMeasure.uniform(rng.uniform(size=(10_000, 2)))
    cmap = max(abs(contraction_rate_map(laws.standard_map(0.97), torus, KB1)),
               abs(contraction_rate_map(laws.standard_map(0.97, wrap=False), torus, KB1)))
    elapsed = time.perf_counter() - t0
    ok = exact < 1e-10 and fd < 1e-6 and cmap < 1e-8 and elapsed < 5.0
    verdict(4, "equilibrium null", ok,
            f"analytic {exact:.3g} (< 1e-10), FD {fd:.3g} (< 1e-6), "
            f"standard map {cmap:.3g} (< 1e-8), {elapsed:.2f} s (< 5 s)")


def test_05_linear_contraction():
    rng = np.random.default_rng(5)
    ensembles = [EnsembleMeasure.point_mass([17.0]),
                 EnsembleMeasure.uniform(rng.normal(size=(1000, 1))),
                 EnsembleMeasure.uniform_grid([-50.0], [50.0], 333)]
    w = rng.uniform(size=400)
    ensembles.append(EnsembleMeasure(rng.uniform(-5, 5, (400, 1)), w / math.fsum(w)))
    exact = [entropy_production(laws.linear_flow(0.5), m, KB1) for m in ensembles]
    fd = [entropy_production(laws.linear_flow(0.5, analytic=False), m, KB1) for m in ensembles]
    fd_err = max(abs(v - 0.5) for v in fd)
    ok = all(v == 0.5 for v in exact) and fd_err < 1e-6
    verdict(5, "linear contraction", ok,
            f"analytic values {sorted(set(exact))} (== 0.5), FD max err {fd_err:.3g} (< 1e-6)")


def test_06_birkhoff_golden_rotation():
    t0 = time.perf_counter()
    ta = time_average(laws.golden_rotation(), [0.0], coordinate(0), 1_000_000)
    ea = ensemble_average(EnsembleMeasure.uniform_grid([0.0], [1.0], 100_000), coordinate(0))
    elapsed = time.perf_counter() - t0
    gap = abs(ta - ea)
    verdict(6, "Birkhoff average", gap < 1e-3 and elapsed < 10.0,
            f"|time - ensemble| = {gap:.3g} (< 1e-3), {elapsed:.2f} s (< 10 s)")


def test_07_onsager_estimator():
    dt, t_max = 0.1, 3.0
    data = ar1_ensemble(np.random.default_rng(7), 10_000, 200, gamma=2.0, dt=dt, channels=2)
    diag = onsager_estimate(data, 0, 0, dt=dt, t_max=t_max)
    cross, se = onsager_estimate(data, 0, 1, dt=dt, t_max=t_max, return_stderr=True)
    rel_err = abs(diag - 0.5) / 0.5
    z = abs(cross) / se
    verdict(7, "Onsager estimator", rel_err < 0.05 and z < 3.0,
            f"L_00 = {diag:.5f} (rel err {rel_err:.3%} < 5%), "
            f"L_01 = {cross:.3g} +- {se:.2g} ({z:.2f} SE < 3)")


def test_08_maximum_entropy_generation():
    t0 = time.perf_counter()
    family = quadratic_family([1.0], peak=2.0, lower=-5.0, upper=5.0)
    res = maximize_entropy_generation(family)
    stat = stationarity_check(family, res.theta, fd_step=1e-4)
    la = least_action_check(family, res.theta, t_ref=300.0)
    elapsed = time.perf_counter() - t0
    err = abs(res.theta[0] - 1.0)
    ok = err < 1e-6 and stat.max_violation <= 1e-8 and la.is_minimal and elapsed < 1.0
    verdict(8, "maximum entropy generation", ok,
            f"|theta* - 1| = {err:.3g} (< 1e-6), max violation {stat.max_violation:.3g} "
            f"(<= 1e-8), action minimal over {len(la.probes)} probes: {la.is_minimal}, "
            f"{elapsed:.3f} s (< 1 s)")


def test_09_mass_conservation():
    system = thermo.CompartmentSystem(
        densities=np.array([1.0, 2.0, 0.5, 1.5]),
        volumes=np.array([1.0, 0.5, 2.0, 1.0]),
        div_velocity=np.array([0.3, -0.6, 0.15, 0.1]),
        source=0.0, div_barycentric=0.0)
    assert abs(np.sum(system.masses * system.div_velocity)) < 1e-15  # divergence-balanced
    m0 = thermo.total_mass(system)
    for _ in range(10_000):
        system = thermo.step_compartments(system, 1e-4)
    drift = abs(thermo.total_mass(system) - m0) / m0
    verdict(9, "mass conservation", drift < 1e-12,
            f"relative drift {drift:.3g} after 1e4 steps (< 1e-12)")


def test_10_verify_determinism(tmp_path):
    cfg = tmp_path / "verify.cfg"
    cfg.write_text("[verify]\n")
    statuses, outs = [], []
    for k in range(2):
        out = tmp_path / f"run{k}"
        statuses.append(main([str(cfg), "--out", str(out), "--seed", "0", "--sequential"]))
        outs.append(out)
    files = sorted(p.name for p in outs[0].glob("*.csv"))
    same = all((outs[0] / f).read_bytes() == (outs[1] / f).read_bytes() for f in files)
    ok = statuses == [0, 0] and same and files == ["report.csv", "verify.csv"]
    verdict(10, "verify determinism", ok,
            f"exit codes {statuses}, byte-identical {files}: {same}")
