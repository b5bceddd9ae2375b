"""Draw the suicide-region phase diagram (asset value against shared ruin)."""

import argparse
from pathlib import Path

from optionrace.config import apply_overrides, preset
from optionrace.sweep import run_sweep, sweep_csv, sweep_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figure1_out")
    ap.add_argument("--pi", type=float, default=0.5)
    ap.add_argument("--share", type=float, default=0.0)
    ap.add_argument("--steps", type=int, default=41, help="grid points on the ruin axis")
    args = ap.parse_args()

    cfg = apply_overrides(preset("figure1"), {"pi": args.pi, "share": args.share, "x_steps": args.steps})
    grid = run_sweep(cfg.validate())
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "figure1.csv").write_text(sweep_csv(grid))
    (out / "figure1.svg").write_text(sweep_svg(grid))

    print(f"{'D':>8} {'v_preempt':>10} {'v_survival':>11} {'band width':>11}")
    for i in range(0, grid.x_axis.steps, max(1, grid.x_axis.steps // 10)):
        t = grid.column(i)[0].thresholds
        print(f"{grid.column(i)[0].x:8.2f} {t.v_preempt:10.4f} {t.v_survival:11.4f} "
              f"{t.v_survival - t.v_preempt:11.4f}")
    print(f"wrote {out / 'figure1.csv'} and {out / 'figure1.svg'}")


if __name__ == "__main__":
    main()
