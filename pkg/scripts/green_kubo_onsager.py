"""Green-Kubo estimate of an Onsager coefficient on an Ornstein-Uhlenbeck ensemble.

For unit variance and relaxation rate gamma the exact coefficient is 1/gamma.
Usage: python3 scripts/green_kubo_onsager.py [--members 10000] [--gamma 2.0]
"""
import argparse

import numpy as np

from irrigen.phase import ar1_ensemble, onsager_estimate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--members", type=int, default=10_000)
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--gamma", type=float, default=2.0)
    ap.add_argument("--dt", type=float, default=0.1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    data = ar1_ensemble(np.random.default_rng(args.seed), args.members, args.steps,
                        args.gamma, args.dt, channels=2)
    exact = 1.0 / args.gamma
    print("t_max,L00,stderr,rel_err,L01,z_cross")
    for t_max in (0.5, 1.0, 2.0, 3.0, 5.0):
        d, se = onsager_estimate(data, 0, 0, dt=args.dt, t_max=t_max, return_stderr=True)
        c, sc = onsager_estimate(data, 0, 1, dt=args.dt, t_max=t_max, return_stderr=True)
        print(f"{t_max},{d:.6f},{se:.2e},{abs(d - exact) / exact:.3%},{c:.2e},{abs(c) / sc:.2f}")


if __name__ == "__main__":
    main()
