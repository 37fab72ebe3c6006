import json
import math

import pytest

from twophoton.cli import (
    DEFAULTS,
    ConfigError,
    apply_set_overrides,
    config_to_json,
    main,
    parse_config,
    run_sweep,
)

TOL = 1e-12


def test_defaults_are_a_valid_config():
    cfg = parse_config({})
    assert cfg == parse_config(DEFAULTS)
    assert cfg["schema_version"] == 1
    assert cfg["experiment"] == "coincidence"


def test_config_round_trips_through_json():
    cfg = parse_config({"theta2p_deg": 90.0, "phi_deg": 45.0, "sweep": {"steps": 7}})
    again = parse_config(json.loads(config_to_json(cfg)))
    assert again == cfg


def test_unknown_keys_are_reported_with_paths():
    with pytest.raises(ConfigError) as err:
        parse_config({"theta1_dg": 3.0, "sweep": {"stepz": 4}})
    paths = [p for p, _ in err.value.problems]
    assert "theta1_dg" in paths
    assert "sweep.stepz" in paths


def test_schema_version_is_checked():
    with pytest.raises(ConfigError) as err:
        parse_config({"schema_version": 2})
    assert err.value.problems[0][0] == "schema_version"


def test_experiment_and_input_cross_validation():
    with pytest.raises(ConfigError):
        parse_config({"experiment": "nonsense"})
    # unpolarized experiment demands the matching input kind
    with pytest.raises(ConfigError) as err:
        parse_config({"experiment": "unpolarized", "sweep": {"param": "phi_deg"}})
    assert any(p == "input" for p, _ in err.value.problems)
    ok = parse_config(
        {"experiment": "unpolarized", "input": "unpolarized", "sweep": {"param": "phi_deg"}}
    )
    assert ok["experiment"] == "unpolarized"


def test_sweep_param_must_fit_the_experiment():
    with pytest.raises(ConfigError) as err:
        parse_config({"experiment": "unpolarized", "input": "unpolarized", "sweep": {"param": "theta1p_deg"}})
    assert any(p == "sweep.param" for p, _ in err.value.problems)


def test_5050_only_experiments_reject_other_splitters():
    with pytest.raises(ConfigError):
        parse_config({"experiment": "no_polarizers", "tx": 0.9, "ty": 0.6})


def test_numeric_field_validation():
    with pytest.raises(ConfigError):
        parse_config({"tx": 1.4})
    with pytest.raises(ConfigError):
        parse_config({"n_pairs": 0})
    with pytest.raises(ConfigError):
        parse_config({"efficiency": -0.1})
    with pytest.raises(ConfigError):
        parse_config({"seed": -1})
    with pytest.raises(ConfigError):
        parse_config({"sweep": {"steps": 0}})


def test_set_overrides_coerce_by_key_type():
    cfg = parse_config({})
    out = apply_set_overrides(cfg, ["sweep.steps=5", "phi_deg=90", "input=polarized"])
    assert out["sweep"]["steps"] == 5 and isinstance(out["sweep"]["steps"], int)
    assert out["phi_deg"] == 90.0
    with pytest.raises(ConfigError):
        apply_set_overrides(cfg, ["sweep.steps=abc"])
    with pytest.raises(ConfigError):
        apply_set_overrides(cfg, ["no_such_key=1"])
    with pytest.raises(ConfigError):
        apply_set_overrides(cfg, ["missing-equals"])


def test_sweep_csv_engine_matches_analytic(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(
        [
            "sweep",
            "--out",
            str(out),
            "--set",
            "sweep.steps=9",
            "--set",
            "sweep.stop=360",
        ]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "phi_deg,analytic,engine,abs_deviation"
    assert len(lines) == 10
    for line in lines[1:]:
        value, analytic, engine, dev = (float(x) for x in line.split(","))
        assert abs(analytic - 0.5 * (1.0 - math.cos(math.radians(value)))) < TOL
        assert dev < TOL


def test_unpolarized_phase_sweep_traces_the_fringe_law(tmp_path):
    out = tmp_path / "fringe.csv"
    code = main(
        [
            "sweep",
            "--out",
            str(out),
            "--set",
            "experiment=unpolarized",
            "--set",
            "input=unpolarized",
            "--set",
            "theta2_deg=0",
            "--set",
            "sweep.param=phi_deg",
            "--set",
            "sweep.steps=73",
        ]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 74
    for line in lines[1:]:
        value, analytic, _, dev = (float(x) for x in line.split(","))
        # equal analyzer angles: (1 - cos phi)/8
        assert abs(analytic - (1.0 - math.cos(math.radians(value))) / 8.0) < TOL
        assert dev < TOL


def test_unpolarized_analyzer_sweep_traces_sine_squared(tmp_path):
    out = tmp_path / "sin2.csv"
    code = main(
        [
            "sweep",
            "--out",
            str(out),
            "--set",
            "experiment=unpolarized",
            "--set",
            "input=unpolarized",
            "--set",
            "sweep.param=theta2_deg",
            "--set",
            "sweep.start=0",
            "--set",
            "sweep.stop=180",
            "--set",
            "sweep.steps=13",
        ]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
    assert abs(rows[0][1]) < TOL  # zero at aligned analyzers
    for value, analytic, _, dev in rows:
        assert abs(analytic - math.sin(math.radians(value)) ** 2 / 8.0) < TOL
        assert dev < TOL


def test_sweep_output_is_byte_stable(tmp_path):
    args = ["sweep", "--set", "sweep.steps=11", "--set", "theta2p_deg=30"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_classical_sweep_has_empty_engine_cells(tmp_path):
    out = tmp_path / "classical.csv"
    code = main(
        [
            "sweep",
            "--out",
            str(out),
            "--set",
            "experiment=classical",
            "--set",
            "sweep.steps=3",
        ]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    first = lines[1].split(",")
    assert first[1] == "3"  # classical floor at phi = 0
    assert first[2] == "" and first[3] == ""


def test_sweep_respects_config_file(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(
        json.dumps(
            {
                "experiment": "same_arm",
                "psi_deg": 0.0,
                "sweep": {"param": "psi_deg", "start": 0.0, "stop": 180.0, "steps": 3},
            }
        )
    )
    out = tmp_path / "sa.csv"
    assert main(["sweep", "--config", str(cfg_path), "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].startswith("psi_deg,")
    rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
    # aligned photons: bunching (1 + cos psi)/4
    assert abs(rows[0][1] - 0.5) < TOL
    assert abs(rows[1][1] - 0.25) < TOL
    assert abs(rows[2][1]) < TOL


def test_mc_runs_are_seed_deterministic(tmp_path):
    args = [
        "mc",
        "--set",
        "n_pairs=20000",
        "--set",
        "theta2p_deg=90",
        "--set",
        "theta2_deg=90",
        "--seed",
        "42",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    header = a.read_text().split("\n")[0]
    assert header == "outcome,count,estimate,stderr,exact,z"


def test_mc_rejects_unnormalizable_phases(capsys):
    code = main(["mc", "--set", "phi_deg=0", "--set", "psi_deg=180", "--set", "n_pairs=10"])
    assert code == 1
    assert "config error" in capsys.readouterr().err


def test_validation_failures_exit_one(capsys):
    code = main(["sweep", "--set", "experiment=bogus"])
    assert code == 1
    err = capsys.readouterr().err
    assert "config error at experiment" in err


def test_missing_config_file_exits_three(capsys):
    code = main(["sweep", "--config", "/no/such/file.json"])
    assert code == 3
    assert "i/o error" in capsys.readouterr().err


def test_unwritable_output_exits_three(tmp_path, capsys):
    code = main(["sweep", "--out", str(tmp_path / "missing_dir" / "x.csv"), "--set", "sweep.steps=1"])
    assert code == 3
    capsys.readouterr()


def test_invalid_json_config_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["sweep", "--config", str(bad)]) == 1
    assert "invalid JSON" in capsys.readouterr().err


def test_compare_quick_grid_passes(capsys):
    code = main(["compare", "--step", "16"])
    out = capsys.readouterr().out
    assert code == 0
    assert "all checks passed" in out


def test_compare_detects_perturbed_constant(tmp_path, capsys):
    out_csv = tmp_path / "report.csv"
    code = main(
        [
            "compare",
            "--step",
            "16",
            "--perturb",
            "unpolarized_5050_prefactor=0.13",
            "--out",
            str(out_csv),
        ]
    )
    assert code == 2
    text = capsys.readouterr().out
    assert "DISAGREEMENT" in text
    report = out_csv.read_text()
    assert "unpolarized_5050" in report and "FAIL" in report


def test_compare_rejects_unknown_perturbation(capsys):
    assert main(["compare", "--perturb", "bogus=1"]) == 1
    assert "unknown perturbation" in capsys.readouterr().err


def test_run_sweep_single_step_uses_start_value():
    cfg = parse_config({"sweep": {"param": "phi_deg", "start": 180.0, "stop": 360.0, "steps": 1}})
    text = run_sweep(cfg)
    lines = text.strip().split("\n")
    assert len(lines) == 2
    assert lines[1].startswith("180,")
