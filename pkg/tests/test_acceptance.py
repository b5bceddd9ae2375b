"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""

import csv
import io
import math
import time
from pathlib import Path

import numpy as np

from conftest import ACCEPTANCE_LINES
from optionrace.cli import main
from optionrace.mechanisms import (
    critical_private_liability,
    critical_windfall_share,
    published_critical_liability,
    warning_shot,
)
from optionrace.model import (
    BeliefState,
    RaceParameters,
    follower_payoff,
    leader_payoff,
    liability_threshold,
    nuclear_threshold,
    preemption_threshold,
    saviour_threshold,
    survival_threshold,
)
from optionrace.simulator import SimConfig, run_race, validate_engine

GOLDEN = Path(__file__).parent / "golden"
D_GRID = (0.0, 1.0, 1e6, 1e9)


def report(number, name, ok, detail=""):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def draws(n=1000, seed=2024):
    rng = np.random.default_rng(seed)
    return [dict(pi=float(rng.uniform(0.01, 1.0)), share=float(rng.uniform(0.0, 1.0)),
                 invest_cost=float(rng.uniform(0.1, 10.0)), d_social=float(rng.uniform(0.0, 100.0)),
                 d_private=float(rng.uniform(0.0, 100.0)))
            for _ in range(n)]


def params_of(d, **changes):
    kw = {k: v for k, v in d.items() if k != "pi"}
    kw.update(changes)
    return RaceParameters(**kw)


def test_criterion_01_d_neutrality():
    start = time.perf_counter()
    mismatches = 0
    for d in draws():
        values = {preemption_threshold(d["pi"], params_of(d, d_social=x)) for x in D_GRID}
        mismatches += len(values) != 1
    elapsed = time.perf_counter() - start
    report(1, "D-neutrality of the preemption threshold", mismatches == 0 and elapsed < 1.0,
           f"{mismatches} mismatches over 1000 draws, {elapsed:.2f}s")


def test_criterion_02_cancellation_at_barrier():
    start = time.perf_counter()
    worst, checked = 0.0, 0
    for d in draws():
        for x in D_GRID:
            p = params_of(d, d_social=x, d_private=0.0)
            vp = preemption_threshold(d["pi"], p)
            if math.isinf(vp):
                continue
            checked += 1
            worst = max(worst, abs(leader_payoff(vp, d["pi"], p) - follower_payoff(vp, d["pi"], p)))
    elapsed = time.perf_counter() - start
    report(2, "leader/follower indifference at the preemption threshold", worst <= 1e-9 and elapsed < 1.0,
           f"max |L-F| = {worst:.3g} over {checked} finite cases, {elapsed:.2f}s")


def test_criterion_03_zero_npv_at_survival():
    start = time.perf_counter()
    worst = {True: 0.0, False: 0.0}
    for d in draws():
        p = params_of(d, share=min(d["share"], 0.99))
        for flag in (True, False):
            vs = survival_threshold(d["pi"], p, include_private=flag)
            # without the flag, the NPV that is zeroed carries no private liability either
            q = p if flag else p.with_(d_private=0.0)
            worst[flag] = max(worst[flag], abs(leader_payoff(vs, d["pi"], q)))
    elapsed = time.perf_counter() - start
    ok = max(worst.values()) <= 1e-9 and elapsed < 1.0
    report(3, "zero leader NPV at the survival threshold", ok,
           f"max |L| includes-private {worst[True]:.3g}, excludes-private {worst[False]:.3g}, {elapsed:.2f}s")


def test_criterion_04_suicide_band_width():
    worst, nonpositive = 0.0, 0
    for d in draws():
        p = params_of(d, share=0.0, d_private=0.0)
        pi = d["pi"]
        width = survival_threshold(pi, p) - preemption_threshold(pi, p)
        expected = (1 - pi) * p.d_social / pi
        worst = max(worst, abs(width - expected) / max(1.0, expected))
        if p.d_social > 0 and pi < 1 and not width > 0:
            nonpositive += 1
    report(4, "suicide band width (1-pi)D/pi at S=0", worst <= 1e-9 and nonpositive == 0,
           f"max scaled error {worst:.3g}, {nonpositive} empty bands with D > 0")


def test_criterion_05_saviour_acceleration():
    rng = np.random.default_rng(5)
    failures = []
    for _ in range(1000):
        pr, ps = sorted(rng.uniform(0.01, 1.0, size=2))
        i, d = rng.uniform(0.1, 10.0), rng.uniform(0.01, 100.0)
        p = RaceParameters(invest_cost=i, d_social=d)
        vsav, _ = saviour_threshold(BeliefState(ps, pr), p)
        if ps > pr and not vsav < preemption_threshold(ps, p):
            failures.append("not below preemption")
        more, _ = saviour_threshold(BeliefState(ps, pr), p.with_(d_social=d * 1.5 + 1))
        if not more <= vsav:
            failures.append("increased with D")
        same, _ = saviour_threshold(BeliefState(ps, ps), p)
        if same != preemption_threshold(ps, p):
            failures.append("zero gap differs from preemption")
    report(5, "saviour threshold below preemption, nonincreasing in D", not failures,
           f"{len(failures)} failures over 1000 draws")


def test_criterion_06_nuclear_contrast():
    grid = np.linspace(0.0, 100.0, 201)
    ok = True
    for pi in (0.1, 0.5, 0.9):
        nuc = [nuclear_threshold(pi, RaceParameters(d_social=x)) for x in grid]
        pre = [preemption_threshold(pi, RaceParameters(d_social=x)) for x in grid]
        ok &= all(b > a for a, b in zip(nuc, nuc[1:])) and len(set(pre)) == 1
    report(6, "nuclear threshold rises with D while preemption stays flat", ok, "201-point D grid, 3 values of pi")


def test_criterion_07_liability_closure():
    p = RaceParameters(invest_cost=1.0, share=0.25, d_social=10.0)
    sols = {m: critical_private_liability(0.5, p, m) for m in ("excludes-private", "includes-private")}
    gaps = {}
    for mode, sol in sols.items():
        q = p.with_(d_private=sol.d_private_numeric)
        gaps[mode] = abs(liability_threshold(0.5, q)
                         - survival_threshold(0.5, q, include_private=mode == "includes-private"))
    published = published_critical_liability(0.5, p)
    ok = (max(gaps.values()) <= 1e-9
          and abs(sols["excludes-private"].d_private_numeric - 6.0) <= 1e-9
          and abs(sols["includes-private"].d_private_numeric - 18.0) <= 1e-9
          and published == 2.0 and all(s.discrepancy > 0 for s in sols.values()))
    report(7, "private liability closes the suicide band", ok,
           f"numeric {sols['excludes-private'].d_private_numeric:.12g} / "
           f"{sols['includes-private'].d_private_numeric:.12g}, printed formula {published:g} (flagged), "
           f"max gap {max(gaps.values()):.3g}")


def test_criterion_08_windfall_closure():
    s = critical_windfall_share(0.5, RaceParameters(invest_cost=1.0, d_social=10.0))
    half_closes = all(
        preemption_threshold(pi, RaceParameters(share=0.5, d_social=d)) >= survival_threshold(
            pi, RaceParameters(share=0.5, d_social=d))
        for pi in (0.1, 0.5, 0.9) for d in (0.0, 10.0, 1e9))
    report(8, "critical windfall share", abs(s - 5 / 11) <= 1e-9 and half_closes,
           f"S* = {s:.12g}, target 5/11; S = 0.5 closes: {half_closes}")


def test_criterion_09_figure1(tmp_path):
    outputs = []
    for k in range(2):
        out = tmp_path / "fig"
        assert main(["sweep", "--preset", "figure1", "--out", str(out)]) == 0
        outputs.append(((out / "sweep.csv").read_bytes(), (out / "sweep.svg").read_bytes()))
    stable = outputs[0] == outputs[1] == ((GOLDEN / "figure1.csv").read_bytes(),
                                          (GOLDEN / "figure1.svg").read_bytes())
    rows = list(csv.DictReader(io.StringIO(outputs[0][0].decode())))
    per_d = {}
    for row in rows:
        per_d.setdefault(float(row["d_social"]), (float(row["v_preempt"]), float(row["v_survival"])))
    ds = sorted(per_d)
    vp = [per_d[d][0] for d in ds]
    vs = [per_d[d][1] for d in ds]
    widths = np.array(vs) - np.array(vp)
    flat = len(set(vp)) == 1
    rising = all(b > a for a, b in zip(vs, vs[1:]))
    slope = (1 - 0.5) / 0.5
    linear = np.allclose(widths, slope * np.array(ds), rtol=0, atol=1e-9)
    report(9, "figure-1 sweep shape and golden files", stable and flat and rising and linear,
           f"flat v_preempt {flat}, rising v_survival {rising}, linear band {linear}, byte-stable {stable}")


def test_criterion_10_simulator_certification():
    params = RaceParameters(r=0.05, delta=0.02, sigma=0.3)
    config = SimConfig(v0=1.0, horizon=150.0, dt=0.05, n_paths=100_000, seed=2024,
                       barrier_kind="fixed", barrier_level=2.0, bridge_correction=True)
    start = time.perf_counter()
    rep = validate_engine(config, params, 2.0, tolerance=0.01)
    elapsed = time.perf_counter() - start
    report(10, "first-passage discount factor vs closed form",
           rep.rel_error <= 0.01 and elapsed < 30.0,
           f"estimate {rep.estimate:.6f} +/- {rep.std_error:.6f}, target {rep.target:.6f}, "
           f"rel error {rep.rel_error:.4%}, {elapsed:.1f}s")


def test_criterion_11_race_coherence():
    config = SimConfig(n_paths=10_000, seed=11)
    a = run_race(config, RaceParameters(d_social=0.0))
    b = run_race(config, RaceParameters(d_social=1e6))
    same_times = np.array_equal(np.array([o.t_deploy for o in a.outcomes]),
                                np.array([o.t_deploy for o in b.outcomes]), equal_nan=True)
    gap = max(a.stats.mean_abs_indifference_gap, b.stats.mean_abs_indifference_gap)
    s = RaceParameters()
    base = run_race(config, s).stats
    z = abs(base.ruin_frequency - base.expected_ruin) / base.ruin_frequency_se
    report(11, "race simulation coherence", same_times and gap <= 1e-6 and z <= 3.0,
           f"identical deployment times {same_times}, mean |L-F| {gap:.3g}, "
           f"ruin {base.ruin_frequency:.4f} vs expected {base.expected_ruin:.4f} ({z:.2f} SE)")


def test_criterion_12_warning_shot():
    rng = np.random.default_rng(12)
    bad_preempt = bad_saviour = checked = 0
    for _ in range(1000):
        pi = float(rng.uniform(0.0, 1.0))
        d = float(rng.uniform(0.0, 100.0))
        jump = float(rng.choice([rng.uniform(0, 10), rng.uniform(0, 1e9)]))
        rep = warning_shot(pi, RaceParameters(share=float(rng.uniform(0, 0.49)), d_social=d), d + jump)
        bad_preempt += rep.delta_v_preempt != 0.0
        pr, ps = sorted(rng.uniform(0.01, 0.99, size=2))
        beliefs, p = BeliefState(ps, pr), RaceParameters(invest_cost=50.0, d_social=d)
        # a threshold already clamped at zero has nowhere lower to go
        if ps > pr and saviour_threshold(beliefs, p)[0] > 0:
            checked += 1
            rep = warning_shot(beliefs, p, d + 1.0)
            bad_saviour += not rep.delta_v_saviour < 0
    report(12, "warning shot leaves preemption unchanged, accelerates saviours",
           bad_preempt == 0 and bad_saviour == 0 and checked > 500,
           f"{bad_preempt} nonzero preemption changes, {bad_saviour}/{checked} non-negative saviour changes")


COMMANDS = [
    ["thresholds", "--preset", "baseline"],
    ["thresholds", "--pi-self", "0.6", "--pi-rival", "0.4"],
    ["classify", "--preset", "baseline"],
    ["sweep", "--preset", "figure1"],
    ["simulate", "race", "--n-paths", "3000", "--horizon", "10", "--seed", "7"],
    ["simulate", "breakout", "--n-paths", "3000", "--horizon", "10", "--lag", "1", "--epsilon", "4", "--seed", "7"],
    ["simulate", "validate", "--n-paths", "3000", "--dt", "0.05", "--horizon", "150",
     "--bridge-correction", "true", "--seed", "7"],
    ["mechanism", "liability", "--preset", "liability-demo"],
    ["mechanism", "windfall"],
    ["mechanism", "warning-shot", "--preset", "warning-shot"],
]


def test_criterion_13_thread_invariance(tmp_path, monkeypatch):
    def snapshot(threads):
        monkeypatch.setenv("OPTIONRACE_THREADS", str(threads))
        files = {}
        for k, argv in enumerate(COMMANDS):
            out = tmp_path / f"cmd{k}"
            main([*argv, "--out", str(out)])
            for f in sorted(out.iterdir()):
                files[f"cmd{k}/{f.name}"] = f.read_bytes()
                f.unlink()
        return files

    one, four = snapshot(1), snapshot(4)
    differing = sorted(k for k in one if one[k] != four.get(k))
    ok = not differing and one.keys() == four.keys() and len(one) > len(COMMANDS)
    report(13, "output files independent of OPTIONRACE_THREADS", ok,
           f"{len(one)} files compared, differing: {differing or 'none'}")
