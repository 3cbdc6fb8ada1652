"""Birkhoff residual of the golden rotation as the horizon grows.

Usage: python3 scripts/birkhoff_convergence.py [--max-exp 6]
"""
import argparse

from irrigen.phase import EnsembleMeasure, coordinate, ensemble_average, laws, time_average


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-exp", type=int, default=6)
    args = ap.parse_args()
    law, obs = laws.golden_rotation(), coordinate(0)
    target = ensemble_average(EnsembleMeasure.uniform_grid([0.0], [1.0], 100_000), obs)
    print("horizon,time_average,residual")
    for e in range(1, args.max_exp + 1):
        ta = time_average(law, [0.0], obs, 10 ** e)
        print(f"{10 ** e},{ta:.12f},{abs(ta - target):.3e}")


if __name__ == "__main__":
    main()
