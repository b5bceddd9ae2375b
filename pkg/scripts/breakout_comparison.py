"""Compare deployment safety with and without rival monitoring.

For a range of breakout windows, runs the breakout rule (deploy when the
rival nears its own survival level) next to the plain survival rule and the
unmonitored preemption race. The lagging lab breaks out as soon as the
leading lab enters the window, so timing depends on the window width; the
lag only decides who deploys.
"""

import argparse

from optionrace.model import RaceParameters
from optionrace.simulator import SimConfig, breakout_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--paths", type=int, default=5000)
    ap.add_argument("--lag", type=float, default=1.0)
    ap.add_argument("--horizon", type=float, default=30.0)
    ap.add_argument("--seed", type=int, default=10)
    args = ap.parse_args()

    params = RaceParameters()
    cfg = SimConfig(horizon=args.horizon, n_paths=args.paths, seed=args.seed)
    print(f"{'eps':>5} {'breakout':>9} {'pi brk':>7} {'ruin':>7} {'ruin surv':>10} {'ruin pre':>9}")
    for eps in (0.0, 1.0, 2.0, 4.0, 8.0):
        rep = breakout_scenario(cfg, params, args.lag, eps)
        pi_brk = f"{rep.pi_mean_breakout:7.3f}" if rep.pi_mean_breakout is not None else f"{'-':>7}"
        print(f"{eps:5.2f} {rep.breakout_fraction:9.3f} {pi_brk} {rep.stats.ruin_frequency:7.3f} "
              f"{rep.survival_baseline.ruin_frequency:10.3f} {rep.no_monitoring_baseline.ruin_frequency:9.3f}")


if __name__ == "__main__":
    main()
