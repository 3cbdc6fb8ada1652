"""Command line entry point: ``irrigen <config-path> [--out DIR] [--seed N] [--sequential]``.

Exit status: 0 success, 1 invalid configuration, 2 numerical failure,
3 verify-suite failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

import numpy as np

from . import checks, exergy, thermo
from .config import ConfigError, parse_config
from .errors import NumericalError
from .phase import (
    EnsembleMeasure,
    birkhoff_residual,
    contraction_rate_map,
    coordinate,
    ensemble_average,
    ensemble_to_csv,
    entropy_generation_statistical,
    entropy_production,
    evolve,
    is_measure_preserving,
    laws,
    time_average,
    trajectory_to_csv,
)
from .variational import (
    OptimizerConfig,
    least_action_check,
    maximize_entropy_generation,
    quadratic_family,
    stationarity_check,
    trace_to_csv,
)

log = logging.getLogger("irrigen")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render_report(rows):
    """``key,value`` CSV with a header row and LF endings."""
    return "key,value\n" + "".join(f"{k},{_fmt(v)}\n" for k, v in rows)


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run_exergy(cfg, out):
    p = dict(cfg.parameters)
    p.setdefault("t_ref", p["t_a"])
    b = exergy.ProcessBalance(**p)
    rep = exergy.balance_report(b)
    if rep["second_law_violation"]:
        log.warning("negative entropy generation: balance violates the second law")
    _write(out / "report.csv", render_report(rep.items()))
    return EXIT_OK


def run_onsager(cfg, out):
    p = cfg.parameters
    xi = np.array(p["xi"])
    n = xi.size
    if len(p["l2"]) != n * n:
        raise ConfigError(f"l2 needs {n * n} entries for {n} coordinates, got {len(p['l2'])}")
    l3 = p.get("l3")
    if l3 is not None and len(l3) != n ** 3:
        raise ConfigError(f"l3 needs {n ** 3} entries for {n} coordinates, got {len(l3)}")
    state = thermo.GeneralizedState(xi)
    tensors = thermo.OnsagerTensors(np.reshape(p["l2"], (n, n)),
                                    None if l3 is None else np.reshape(l3, (n, n, n)))
    res = thermo.consistency_report(state, tensors, p.get("rho_s"), p.get("rho_pi"))
    rows = [
        ("entropy_rate_density", thermo.entropy_rate_density(state, tensors)),
        ("dissipative_potential", thermo.dissipative_potential(state, tensors)),
        ("lagrangian_density", thermo.lagrangian_density(state, tensors)),
        ("hamiltonian_density", thermo.hamiltonian_density(state, tensors)),
    ]
    rows += [(f"momentum_{i}", z) for i, z in enumerate(thermo.conjugate_momenta(state, tensors))]
    rows += [(f"residual_{f.name}", getattr(res, f.name))
             for f in dataclasses.fields(res) if getattr(res, f.name) is not None]
    _write(out / "report.csv", render_report(rows))
    return EXIT_OK


def _phase_setup(p, rng):
    """Law, ensemble and default start for a named phase-mode system."""
    name = p["system"]
    n = p.get("samples", 100_000)
    if name == "golden_rotation":
        return laws.golden_rotation(), EnsembleMeasure.uniform_grid([0.0], [1.0], n), [0.0]
    if name == "logistic":
        # midpoint lattice pushed through the inverse CDF of the arcsine law
        u = (np.arange(n) + 0.5) / n
        return laws.logistic(), EnsembleMeasure.uniform(np.sin(0.5 * np.pi * u) ** 2), [0.1234]
    if name == "standard_map":
        side = max(1, int(round(np.sqrt(n))))
        return (laws.standard_map(p.get("k", 0.97)),
                EnsembleMeasure.uniform_grid([0.0, 0.0], [1.0, 1.0], side), [0.1, 0.2])
    lam = p.get("lam", 0.5)
    if name == "linear_flow":
        law = laws.linear_flow(lam)
    elif name == "rotation_flow":
        law = laws.rotation_flow()
    else:
        law = laws.cubic_flow()
    cloud = EnsembleMeasure.uniform(rng.normal(size=(n, law.dim)))
    return law, cloud, [1.0] * law.dim


def run_phase(cfg, out):
    p = cfg.parameters
    rng = np.random.default_rng(cfg.seed)
    law, measure, start = _phase_setup(p, rng)
    start = list(p.get("start", start))
    horizon = p.get("horizon", 1_000_000 if not law.is_flow else 1000)
    constants = thermo.PhysicalConstants(k_b=cfg.k_b, t_ref=300.0)
    obs = coordinate(0)
    rows = [("system", p["system"]), ("k_b", cfg.k_b)]
    if law.is_flow:
        rows.append(("entropy_production", entropy_production(law, measure, constants)))
        fd_law = dataclasses.replace(law, divergence=None)
        rows.append(("entropy_production_fd", entropy_production(fd_law, measure, constants)))
        rows.append(("entropy_generation_statistical",
                     entropy_generation_statistical(law, measure, constants,
                                                    p.get("m_dot", 1.0))))
        traj = evolve(law, start, horizon)
        if traj.truncated:
            raise NumericalError(f"flow orbit diverged after {len(traj) - 1} steps")
        rows.append(("final_x0", traj.end[0]))
    else:
        t_avg = time_average(law, start, obs, horizon)
        e_avg = ensemble_average(measure, obs)
        rows += [("time_average", t_avg), ("ensemble_average", e_avg),
                 ("birkhoff_residual", abs(t_avg - e_avg)),
                 ("contraction_rate", contraction_rate_map(law, measure, constants))]
        if measure.dim <= 3:
            ok, dev = is_measure_preserving(law, measure, bins=p.get("bins", 100))
            rows += [("measure_preserving", ok), ("measure_deviation", dev)]
        traj = evolve(law, start, min(horizon, p.get("dump", 1000)) - 1)
    rows.append(("horizon", horizon))
    _write(out / "report.csv", render_report(rows))
    _write(out / "trajectory.csv", trajectory_to_csv(traj))
    _write(out / "ensemble.csv", ensemble_to_csv(measure))
    return EXIT_OK


def run_variational(cfg, out, sequential):
    p = cfg.parameters
    family = quadratic_family(p["center"], p.get("peak", 2.0),
                              p.get("lower", -5.0), p.get("upper", 5.0))
    opt_cfg = OptimizerConfig(
        max_iters=p.get("max_iters", 200), tol_value=p.get("tol_value", 1e-15),
        tol_param=p.get("tol_param", 1e-10), fd_step=p.get("fd_step", 1e-4),
        seed=cfg.seed, n_starts=p.get("n_starts", 4))
    opt = maximize_entropy_generation(family, opt_cfg, sequential=sequential)
    stat = stationarity_check(family, opt.theta, opt_cfg.fd_step)
    la = least_action_check(family, opt.theta, p.get("t_ref", 300.0),
                            p.get("horizon", 1.0), p.get("dt", 0.01))
    rows = [(f"theta_{k}", t) for k, t in enumerate(opt.theta)]
    rows += [("delta_s_irr_max", opt.value), ("converged", opt.converged),
             ("evaluations", len(opt.trace)),
             ("max_violation", stat.max_violation), ("gradient_norm", stat.gradient_norm),
             ("action_min", la.action_at_optimum), ("least_action_minimal", la.is_minimal)]
    _write(out / "report.csv", render_report(rows))
    _write(out / "trace.csv", trace_to_csv(opt.trace))
    return EXIT_OK


def run_verify(cfg, out, sequential):
    p = cfg.parameters
    results = checks.run_suite(seed=cfg.seed, instances=p.get("instances", 1000),
                               horizon=p.get("horizon", 100_000), sequential=sequential)
    lines = ["check,passed,value,tolerance\n"]
    lines += [f"{r.name},{_fmt(r.passed)},{_fmt(r.value)},{_fmt(r.tolerance)}\n"
              for r in results]
    _write(out / "verify.csv", "".join(lines))
    failed = [r for r in results if not r.passed]
    for r in failed:
        log.error("check %s failed: %.17g (tolerance %g)", r.name, r.value, r.tolerance)
    _write(out / "report.csv", render_report([("checks_total", len(results)),
                                              ("checks_failed", len(failed))]))
    return EXIT_VERIFY if failed else EXIT_OK


def run(config, sequential=False):
    """Dispatch a validated RunConfig; returns the process exit status."""
    out = Path(config.output_path)
    out.mkdir(parents=True, exist_ok=True)
    try:
        if config.mode == "exergy":
            return run_exergy(config, out)
        if config.mode == "onsager":
            return run_onsager(config, out)
        if config.mode == "phase":
            return run_phase(config, out)
        if config.mode == "variational":
            return run_variational(config, out, sequential)
        return run_verify(config, out, sequential)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (NumericalError, ArithmeticError, np.linalg.LinAlgError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    except ValueError as exc:
        log.error("invalid input: %s", exc)
        return EXIT_CONFIG


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="irrigen",
        description="Entropy generation, lost work and phase-space contraction toolkit.")
    parser.add_argument("config", help="path to a run configuration file")
    parser.add_argument("--out", help="output directory (overrides [run] output)")
    parser.add_argument("--seed", type=int, help="random seed (overrides [run] seed)")
    parser.add_argument("--sequential", action="store_true",
                        help="single worker, bitwise-reproducible results")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="irrigen: %(levelname)s: %(message)s")

    try:
        text = Path(args.config).read_text(encoding="utf-8")
        config = parse_config(text)
    except (OSError, ConfigError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    overrides = {}
    if args.out is not None:
        overrides["output_path"] = args.out
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        config = dataclasses.replace(config, **overrides)
    status = run(config, sequential=args.sequential)
    print(Path(config.output_path) / "report.csv")
    return status


if __name__ == "__main__":
    sys.exit(main())
