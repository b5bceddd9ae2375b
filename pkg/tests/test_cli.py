import csv
import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optionrace.cli import main
from optionrace.config import PRESETS, RunConfig, apply_overrides, from_json, preset

GOLDEN = Path(__file__).parent / "golden"


def run(tmp_path, *argv, sub="out"):
    out = tmp_path / sub
    code = main([*argv, "--out", str(out)])
    return code, out


def read_json(path):
    return json.loads(Path(path).read_text())


def column(path, name):
    with open(path) as fh:
        return [row[name] for row in csv.DictReader(fh)]


# thresholds and classification -------------------------------------------------

def test_baseline_thresholds(tmp_path, capsys):
    code, out = run(tmp_path, "thresholds", "--preset", "baseline")
    assert code == 0
    t = read_json(out / "thresholds.json")["thresholds"]
    assert (t["v_preempt"], t["v_survival"], t["v_nuclear"]) == (2.0, 12.0, 12.0)
    assert "suicide band [2, 12)" in capsys.readouterr().out


def test_half_share_renders_infinity(tmp_path, capsys):
    code, out = run(tmp_path, "thresholds", "--share", "0.5")
    assert code == 0
    assert read_json(out / "thresholds.json")["thresholds"]["v_preempt"] == "inf"
    assert "v_preempt    inf" in capsys.readouterr().out


def test_saviour_clamp_is_marked(tmp_path, capsys):
    code, out = run(tmp_path, "thresholds", "--pi-self", "0.6", "--pi-rival", "0.4")
    assert code == 0
    t = read_json(out / "thresholds.json")["thresholds"]
    assert t["v_saviour"] == 0.0 and t["immediate_deploy"] is True
    assert "[immediate_deploy]" in capsys.readouterr().out


def test_classify(tmp_path):
    code, out = run(tmp_path, "classify", "--d-social", "5", "--v", "3")
    assert code == 0
    assert read_json(out / "classify.json")["label"] == "SuicideRegion"
    code, out = run(tmp_path, "classify", "--d-social", "5", "--v", "13", sub="b")
    assert read_json(out / "classify.json")["label"] == "RaceViable"


# sweep and golden files ----------------------------------------------------------

def test_figure1_golden_files(tmp_path):
    code, out = run(tmp_path, "sweep", "--preset", "figure1")
    assert code == 0
    assert (out / "sweep.csv").read_bytes() == (GOLDEN / "figure1.csv").read_bytes()
    assert (out / "sweep.svg").read_bytes() == (GOLDEN / "figure1.svg").read_bytes()


def test_figure1_labels_match_independent_classifier():
    with open(GOLDEN / "figure1.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 41 * 51
    for row in rows:
        d, v = float(row["d_social"]), float(row["v"])
        vp, vs = 1 / 0.5, (1 + 0.5 * d) / 0.5
        if v < min(vp, vs):
            want = "WaitBelowAll"
        elif v >= max(vp, vs):
            want = "RaceViable"
        elif vp <= v < vs:
            want = "SuicideRegion"
        else:
            want = "ProfitableWait"
        assert row["label"] == want
    assert {row["v_preempt"] for row in rows} == {"2"}
    # zero ruin: the band collapses, nothing is labelled suicide
    assert all(row["label"] != "SuicideRegion" for row in rows if float(row["d_social"]) == 0)


def test_sweep_over_non_value_axes(tmp_path):
    code, out = run(tmp_path, "sweep", "--x-axis", "d_social", "--y-axis", "pi", "--y-min", "0.05",
                    "--y-max", "0.95", "--y-steps", "5", "--x-steps", "3", "--format", "csv,svg")
    assert code == 0
    assert column(out / "sweep.csv", "pi")[:5] == ["0.05", "0.275", "0.5", "0.725", "0.95"]
    assert (out / "sweep.svg").read_text().startswith("<svg")
    assert not (out / "config.json").exists()


def test_sweep_rejects_unknown_axis(tmp_path):
    code, _ = run(tmp_path, "sweep", "--x-axis", "colour")
    assert code == 1


# simulation -------------------------------------------------------------------------

SMALL = ("--n-paths", "400", "--horizon", "10", "--seed", "5")


def test_race_is_d_neutral(tmp_path):
    a_code, a = run(tmp_path, "simulate", "race", *SMALL, "--d-social", "0", sub="a")
    b_code, b = run(tmp_path, "simulate", "race", *SMALL, "--d-social", "1e6", sub="b")
    assert a_code == b_code == 0
    assert column(a / "race_paths.csv", "t_deploy") == column(b / "race_paths.csv", "t_deploy")
    assert read_json(a / "race_stats.json")["seed"] == 5


def test_zero_window_breakout_matches_survival_race(tmp_path):
    code, a = run(tmp_path, "simulate", "breakout", *SMALL, "--epsilon", "0", sub="a")
    assert code == 0
    code, b = run(tmp_path, "simulate", "race", *SMALL, "--barrier", "survival", sub="b")
    assert code == 0
    assert (a / "breakout_paths.csv").read_bytes() == (b / "race_paths.csv").read_bytes()
    assert read_json(a / "breakout.json")["stats"] == read_json(b / "race_stats.json")["stats"]


def test_validate_exit_code_follows_tolerance(tmp_path):
    args = ("simulate", "validate", "--barrier-level", "2", "--dt", "0.05", "--horizon", "150",
            "--bridge-correction", "true", "--seed", "1")
    code, out = run(tmp_path, *args, "--n-paths", "20000", sub="a")
    rep = read_json(out / "validation.json")["report"]
    assert rep["target"] == pytest.approx(0.42518, abs=1e-5)
    assert code == (0 if rep["within_tolerance"] else 2)
    code, out = run(tmp_path, *args, "--n-paths", "20", "--set", "seed=3", sub="b")
    rep = read_json(out / "validation.json")["report"]
    assert not rep["within_tolerance"] and code == 2


def test_validate_inapplicable_exits_numeric(tmp_path):
    code, _ = run(tmp_path, "simulate", "validate", "--r", "0", "--n-paths", "10")
    assert code == 2


# mechanisms -------------------------------------------------------------------------

def test_liability_preset(tmp_path, capsys):
    code, out = run(tmp_path, "mechanism", "liability", "--preset", "liability-demo")
    assert code == 0
    sols = read_json(out / "liability.json")["solutions"]
    assert sols["excludes-private"]["d_private_numeric"] == pytest.approx(6.0)
    assert sols["includes-private"]["d_private_numeric"] == pytest.approx(18.0)
    assert sols["excludes-private"]["d_private_paper"] == 2.0
    assert "discrepancy" in capsys.readouterr().out


def test_liability_unsolvable_mode_exits_numeric(tmp_path):
    code, out = run(tmp_path, "mechanism", "liability", "--survival-mode", "includes-private")
    assert code == 2
    assert "includes-private" in read_json(out / "liability.json")["errors"]
    code, _ = run(tmp_path, "mechanism", "liability", sub="b")
    assert code == 0


def test_windfall(tmp_path):
    code, out = run(tmp_path, "mechanism", "windfall", "--preset", "baseline")
    assert code == 0
    assert read_json(out / "windfall.json")["critical_share"] == pytest.approx(5 / 11, abs=1e-9)


def test_warning_shot_preset(tmp_path):
    code, out = run(tmp_path, "mechanism", "warning-shot", "--preset", "warning-shot")
    assert code == 0
    rep = read_json(out / "warning_shot.json")
    assert rep["delta_v_preempt"] == 0.0
    assert rep["delta_v_survival"] == pytest.approx(45.0)


def test_warning_shot_needs_target(tmp_path):
    assert run(tmp_path, "mechanism", "warning-shot")[0] == 1


# configuration and exit codes -----------------------------------------------------

def test_usage_errors_exit_one(tmp_path):
    assert main(["nonsense"]) == 1
    assert main(["thresholds", "--d-social"]) == 1
    assert run(tmp_path, "thresholds", "--preset", "missing")[0] == 1
    assert run(tmp_path, "thresholds", "--set", "colour=red")[0] == 1
    assert run(tmp_path, "thresholds", "--set", "novalue")[0] == 1
    assert run(tmp_path, "thresholds", "--pi", "1.5")[0] == 1
    assert run(tmp_path, "thresholds", "--pi-self", "0.5")[0] == 1
    assert run(tmp_path, "thresholds", "--format", "pdf")[0] == 1
    assert run(tmp_path, "simulate", "race", "--n-paths", "2.5")[0] == 1


def test_bad_config_file_reports_location(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "d_social": 5,\n  oops\n}\n')
    assert run(tmp_path, "thresholds", "--config", str(path))[0] == 1
    assert "line 3" in capsys.readouterr().err
    assert run(tmp_path, "thresholds", "--config", str(tmp_path / "absent.json"))[0] == 1


def test_config_file_then_flags(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"d_social": 5.0, "pi": 0.25}))
    code, out = run(tmp_path, "thresholds", "--config", str(path), "--pi", "0.5")
    assert code == 0
    t = read_json(out / "thresholds.json")["thresholds"]
    assert t["v_survival"] == pytest.approx(7.0)
    cfg = from_json((out / "config.json").read_text())
    assert cfg.d_social == 5.0 and cfg.pi == 0.5


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_round_trip(name):
    cfg = preset(name)
    assert from_json(cfg.to_json()) == cfg


@settings(max_examples=50)
@given(st.floats(0, 1e9), st.floats(0.001, 1.0), st.integers(0, 2**64 - 1),
       st.one_of(st.none(), st.floats(0, 100)), st.lists(st.sampled_from(["csv", "json", "svg"])))
def test_config_round_trip(d, pi, seed, tau, formats):
    cfg = apply_overrides(RunConfig(), {"d_social": d, "pi": pi, "seed": seed, "tau": tau, "formats": formats})
    assert from_json(cfg.to_json()) == cfg


def test_threads_do_not_change_files(tmp_path, monkeypatch):
    # same output directory both times, since config.json records it
    names = ("race_paths.csv", "race_stats.json", "config.json")
    monkeypatch.setenv("OPTIONRACE_THREADS", "1")
    _, out = run(tmp_path, "simulate", "race", "--n-paths", "2100", "--horizon", "5")
    first = {n: (out / n).read_bytes() for n in names}
    monkeypatch.setenv("OPTIONRACE_THREADS", "4")
    run(tmp_path, "simulate", "race", "--n-paths", "2100", "--horizon", "5")
    assert {n: (out / n).read_bytes() for n in names} == first
