"""``optionrace`` command line.

Exit codes: 0 success, 1 usage or configuration error, 2 numerical or
solver failure (including a failed engine validation).
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import sys
from pathlib import Path

from . import mechanisms, simulator
from .config import (
    FIELD_NAMES,
    ConfigError,
    RunConfig,
    apply_overrides,
    dump_json,
    fmt,
    load_config_file,
    parse_assignment,
    preset,
)
from .model import DomainError, classify_region, compute_thresholds
from .sweep import run_sweep, sweep_csv, sweep_svg

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2

OUTCOME_COLUMNS = tuple(f.name for f in dataclasses.fields(simulator.RaceOutcome))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--preset", help="built-in preset name")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a field")
    p.add_argument("--out", help="output directory")
    p.add_argument("--format", help="comma-separated subset of csv,json,svg")
    p.add_argument("--seed", type=int)
    fields = p.add_argument_group("fields", "any RunConfig field, e.g. --d-social 10")
    for name in FIELD_NAMES:
        if name in ("seed", "out_dir", "formats"):
            continue
        flags = ["--" + name.replace("_", "-")]
        if name == "barrier_kind":
            flags.append("--barrier")
        fields.add_argument(*flags, dest="field_" + name, metavar="VALUE")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="optionrace", description="Preemption race with shared existential risk.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("thresholds", "classify", "sweep"):
        _add_common(sub.add_parser(name))
    sim = sub.add_parser("simulate")
    sim.add_argument("variant", choices=("race", "breakout", "validate"))
    _add_common(sim)
    mech = sub.add_parser("mechanism")
    mech.add_argument("variant", choices=("liability", "windfall", "warning-shot"))
    _add_common(mech)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = preset(args.preset) if args.preset else RunConfig()
    if args.config:
        try:
            cfg = load_config_file(args.config, cfg)
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc.strerror}") from None
    flags = {}
    for name in FIELD_NAMES:
        value = getattr(args, "field_" + name, None)
        if value is not None:
            flags[name] = value
    for item in args.set:
        key, value = parse_assignment(item)
        flags[key] = value
    if args.seed is not None:
        flags["seed"] = str(args.seed)
    if args.out is not None:
        flags["out_dir"] = args.out
    if args.format is not None:
        flags["formats"] = args.format
    cfg = apply_overrides(cfg, flags, origin="command line")
    if args.command == "simulate" and args.variant == "validate":
        # engine validation always walks to a fixed level, two times v0 unless given
        level = cfg.barrier_level if cfg.barrier_level is not None else 2.0 * cfg.v0
        cfg = dataclasses.replace(cfg, barrier_kind="fixed", barrier_level=level)
    return cfg.validate()


class _Writer:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.files: dict[str, str] = {}

    def add(self, name: str, text: str, fmt_key: str) -> None:
        if fmt_key in self.cfg.formats:
            self.files[name] = text

    def flush(self) -> None:
        if not self.files:
            return
        out = Path(self.cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        if "json" in self.cfg.formats:
            self.files.setdefault("config.json", self.cfg.to_json())
        for name, text in sorted(self.files.items()):
            (out / name).write_text(text)
            print(f"wrote {out / name}")


def _outcomes_csv(outcomes) -> str:
    buf = io.StringIO()
    buf.write(",".join(OUTCOME_COLUMNS) + "\n")
    for o in outcomes:
        buf.write(",".join(fmt(getattr(o, c)) for c in OUTCOME_COLUMNS) + "\n")
    return buf.getvalue()


def cmd_thresholds(cfg: RunConfig, w: _Writer) -> int:
    beliefs = cfg.beliefs()
    ts = compute_thresholds(beliefs, cfg.race_parameters(), cfg.include_private)
    print(f"pi_self = {fmt(beliefs.pi_self)}, pi_rival = {fmt(beliefs.pi_rival)}")
    rows = [("v_preempt", ts.v_preempt), ("v_survival", ts.v_survival), ("v_nuclear", ts.v_nuclear),
            ("v_saviour", ts.v_saviour), ("v_liability", ts.v_liability)]
    for name, value in rows:
        text = "n/a (share != 0)" if value is None else fmt(value)
        if name == "v_saviour" and ts.immediate_deploy:
            text += "  [immediate_deploy]"
        print(f"{name:<12} {text}")
    band = ts.suicide_band
    print("suicide band " + (f"[{fmt(band[0])}, {fmt(band[1])})" if band else "empty"))
    w.add("thresholds.json", dump_json({"beliefs": beliefs, "thresholds": ts, "suicide_band": band}), "json")
    return EXIT_OK


def cmd_classify(cfg: RunConfig, w: _Writer) -> int:
    beliefs = cfg.beliefs()
    label = classify_region(cfg.v, beliefs.pi_self, cfg.race_parameters(), cfg.include_private)
    print(f"v = {fmt(cfg.v)}: {label.region.value} "
          f"(v_preempt {fmt(label.v_preempt)}, v_survival {fmt(label.v_survival)})")
    w.add("classify.json", dump_json({"v": cfg.v, "pi": beliefs.pi_self, "label": label.region.value,
                                      "v_preempt": label.v_preempt, "v_survival": label.v_survival}), "json")
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, w: _Writer) -> int:
    grid = run_sweep(cfg)
    counts: dict[str, int] = {}
    for c in grid.cells:
        counts[c.label.value] = counts.get(c.label.value, 0) + 1
    print(f"{grid.x_axis.name} x {grid.y_axis.name}: {len(grid.cells)} cells")
    for name, n in sorted(counts.items()):
        print(f"  {name:<16} {n}")
    w.add("sweep.csv", sweep_csv(grid), "csv")
    w.add("sweep.svg", sweep_svg(grid), "svg")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, variant: str, w: _Writer) -> int:
    params = cfg.race_parameters()
    sim = cfg.sim_config()
    print(f"seed: {sim.seed}")
    if variant == "race":
        result = simulator.run_race(sim, params, cfg.beliefs())
        s = result.stats
        print(f"deployed {s.n_deployed}/{s.n_paths}, mean t {fmt(s.t_deploy_mean)}, "
              f"ruin {fmt(s.ruin_frequency)} (expected {fmt(s.expected_ruin)})")
        w.add("race_stats.json", dump_json({"seed": sim.seed, "barrier_kind": sim.barrier_kind,
                                            "stats": s}), "json")
        w.add("race_paths.csv", _outcomes_csv(result.outcomes), "csv")
        return EXIT_OK
    if variant == "breakout":
        rep = simulator.breakout_scenario(sim, params, cfg.lag, cfg.epsilon)
        print(f"breakout fraction {fmt(rep.breakout_fraction)}, ruin {fmt(rep.stats.ruin_frequency)} "
              f"vs survival rule {fmt(rep.survival_baseline.ruin_frequency)} "
              f"vs no monitoring {fmt(rep.no_monitoring_baseline.ruin_frequency)}")
        body = dataclasses.asdict(rep)
        body.pop("outcomes")
        body["seed"] = sim.seed
        w.add("breakout.json", dump_json(body), "json")
        w.add("breakout_paths.csv", _outcomes_csv(rep.outcomes), "csv")
        return EXIT_OK
    level = cfg.barrier_level
    rep = simulator.validate_engine(sim, params, level)
    if rep.applicable:
        print(f"estimate {fmt(rep.estimate)} +/- {fmt(rep.std_error)}, target {fmt(rep.target)}, "
              f"relative error {fmt(rep.rel_error)} (tolerance {fmt(rep.tolerance)})")
    else:
        print(rep.message)
    w.add("validation.json", dump_json({"seed": sim.seed, "barrier_level": level, "report": rep}), "json")
    return EXIT_OK if rep.within_tolerance else EXIT_NUMERIC


def cmd_mechanism(cfg: RunConfig, variant: str, w: _Writer) -> int:
    params = cfg.race_parameters()
    beliefs = cfg.beliefs()
    pi = beliefs.pi_self
    if variant == "liability":
        solutions, errors = {}, {}
        for mode in mechanisms.SURVIVAL_MODES:
            try:
                solutions[mode] = mechanisms.critical_private_liability(pi, params, mode)
            except mechanisms.SolverError as exc:
                errors[mode] = str(exc)
        print(f"published closed form: D_private >= {fmt(mechanisms.published_critical_liability(pi, params))}")
        for mode in mechanisms.SURVIVAL_MODES:
            if mode in solutions:
                sol = solutions[mode]
                print(f"numeric ({mode}): {fmt(sol.d_private_numeric)}  discrepancy {fmt(sol.discrepancy)}"
                      + ("  [already closed]" if sol.already_closed else ""))
            else:
                print(f"numeric ({mode}): failed: {errors[mode]}")
        w.add("liability.json", dump_json({"pi": pi, "solutions": solutions, "errors": errors}), "json")
        return EXIT_NUMERIC if cfg.survival_mode in errors else EXIT_OK
    if variant == "windfall":
        s_star = mechanisms.critical_windfall_share(pi, params, cfg.include_private)
        print(f"critical windfall share S* = {fmt(s_star)}")
        w.add("windfall.json", dump_json({"pi": pi, "critical_share": s_star}), "json")
        return EXIT_OK
    if cfg.d_after is None:
        raise ConfigError("warning-shot needs d_after")
    rep = mechanisms.warning_shot(beliefs, params, cfg.d_after, cfg.include_private)
    print(f"D {fmt(rep.d_before)} -> {fmt(rep.d_after)}")
    print(f"  delta v_preempt   {fmt(rep.delta_v_preempt)}")
    print(f"  delta v_survival  {fmt(rep.delta_v_survival)}")
    print(f"  delta v_saviour   {fmt(rep.delta_v_saviour) or 'n/a'}")
    print(f"  band width change {fmt(rep.region_width_change)}")
    w.add("warning_shot.json", dump_json(rep), "json")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        w = _Writer(cfg)
        if args.command == "thresholds":
            code = cmd_thresholds(cfg, w)
        elif args.command == "classify":
            code = cmd_classify(cfg, w)
        elif args.command == "sweep":
            code = cmd_sweep(cfg, w)
        elif args.command == "simulate":
            code = cmd_simulate(cfg, args.variant, w)
        else:
            code = cmd_mechanism(cfg, args.variant, w)
        w.flush()
        return code
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (mechanisms.SolverError, simulator.SimulationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
