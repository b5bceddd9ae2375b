"""Check the path engine against the closed-form first-passage discount factor.

Prints a convergence table in the number of paths, with and without the
Brownian-bridge crossing correction, for a barrier at twice the start value.
"""

import argparse
import time

from optionrace.model import RaceParameters
from optionrace.simulator import SimConfig, validate_engine


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--barrier", type=float, default=2.0)
    ap.add_argument("--sigma", type=float, default=0.3)
    ap.add_argument("--dt", type=float, default=0.05)
    ap.add_argument("--horizon", type=float, default=150.0)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--max-paths", type=int, default=100_000)
    args = ap.parse_args()

    params = RaceParameters(r=0.05, delta=0.02, sigma=args.sigma)
    print(f"{'paths':>8} {'bridge':>6} {'estimate':>10} {'se':>9} {'target':>9} {'rel err':>8} {'secs':>6}")
    n = 1000
    while n <= args.max_paths:
        for bridge in (False, True):
            cfg = SimConfig(v0=1.0, horizon=args.horizon, dt=args.dt, n_paths=n, seed=args.seed,
                            barrier_kind="fixed", barrier_level=args.barrier, bridge_correction=bridge)
            start = time.perf_counter()
            rep = validate_engine(cfg, params, args.barrier)
            secs = time.perf_counter() - start
            print(f"{n:8d} {str(bridge):>6} {rep.estimate:10.6f} {rep.std_error:9.6f} "
                  f"{rep.target:9.6f} {rep.rel_error:8.4%} {secs:6.1f}")
        n *= 10


if __name__ == "__main__":
    main()
