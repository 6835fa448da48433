"""CLI: argument parsing, subcommand wiring, exit codes, file outputs."""

import json

import pytest

from hco.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main, parse_int_spec
from hco.errors import InvalidConfigError


def test_parse_int_spec():
    assert parse_int_spec("50") == [50]
    assert parse_int_spec("1,10,100") == [1, 10, 100]
    assert parse_int_spec("10..40..10") == [10, 20, 30, 40]
    assert parse_int_spec("3..5") == [3, 4, 5]
    for bad in ("", "a", "5..1", "1..10..0", "1..2..3..4"):
        with pytest.raises(InvalidConfigError):
            parse_int_spec(bad)


def test_simulate_writes_report_and_csv(tmp_path, capsys):
    out, csv_path = tmp_path / "report.json", tmp_path / "rows.csv"
    code = main([
        "simulate", "--strategy", "outsourcing_greedy", "--s", "9", "--m", "2",
        "--windows", "6", "--seed", "1",
        "--human", '{"solve_time_median_ms":20000,"solve_time_sigma":0.0}',
        "--out", str(out), "--csv", str(csv_path),
    ])
    assert code == EXIT_OK
    report = json.loads(out.read_text())
    assert len(report["windows"]) == 6
    assert report["metrics"]["tau_h"] == 3
    assert csv_path.read_text().splitlines()[0] == "window,s_t,m_t,a_t,cost"
    stdout = capsys.readouterr().out
    assert "bounds hold" in stdout


def test_simulate_accepts_config_file(tmp_path):
    config = {
        "s": 6, "strategy": "outsourcing_greedy",
        "m_schedule": {"kind": "constant", "m": 2},
        "windows": 3, "seed": 2,
        "human": {"solve_time_median_ms": 20000, "solve_time_sigma": 0.0},
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    assert main(["simulate", "--config", str(path)]) == EXIT_OK


def test_simulate_requires_strategy_without_config(capsys):
    assert main(["simulate", "--s", "5"]) == EXIT_USAGE
    assert "required" in capsys.readouterr().err


def test_verify_bounds_ok_and_tamper(tmp_path, capsys):
    out = tmp_path / "report.json"
    main([
        "simulate", "--strategy", "outsourcing_greedy", "--s", "9", "--m", "2",
        "--windows", "5", "--seed", "3",
        "--human", '{"solve_time_median_ms":20000,"solve_time_sigma":0.0}',
        "--out", str(out),
    ])
    assert main(["verify-bounds", str(out)]) == EXIT_OK

    data = json.loads(out.read_text())
    data["windows"][0]["s_t"] = 1_000  # forged activity
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(data))
    assert main(["verify-bounds", str(tampered)]) == EXIT_CHECK_FAILED

    data = json.loads(out.read_text())
    data["metrics"]["tau_h"] = 99  # forged certificate
    forged = tmp_path / "forged.json"
    forged.write_text(json.dumps(data))
    assert main(["verify-bounds", str(forged)]) == EXIT_CHECK_FAILED


def test_sweep_prints_fit(tmp_path, capsys):
    out = tmp_path / "sweep.json"
    assert main(["sweep", "--s", "6..18..6", "--out", str(out)]) == EXIT_OK
    stdout = capsys.readouterr().out
    assert "slope=" in stdout
    saved = json.loads(out.read_text())
    assert [p["s"] for p in saved["points"]] == [6, 12, 18]
    assert saved["tau_h"] == 3


def test_compare_models_output(capsys):
    assert main(["compare-models", "--s", "30,60"]) == EXIT_OK
    stdout = capsys.readouterr().out
    assert "proof-of-work" in stdout and "challenge-oracle" in stdout


def test_family_table_small(capsys):
    assert main(["family-table", "--trials", "60", "--seed", "4"]) == EXIT_OK
    stdout = capsys.readouterr().out
    for family in ("perceptual", "reasoning", "attention", "biometric"):
        assert family in stdout


def test_demo_challenge_deterministic(capsys):
    seed = "ab" * 32
    assert main(["demo-challenge", "--family", "reasoning", "--seed-hex", seed]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["demo-challenge", "--family", "reasoning", "--seed-hex", seed]) == EXIT_OK
    assert capsys.readouterr().out == first
    payload = json.loads(first)
    assert payload["family"] == "reasoning" and "reference_answer" in payload


def test_bad_inputs_exit_usage(tmp_path, capsys):
    assert main(["sweep", "--s", "oops"]) == EXIT_USAGE
    assert main(["verify-bounds", str(tmp_path / "missing.json")]) == EXIT_USAGE
    assert main(["demo-challenge", "--seed-hex", "zz"]) == EXIT_USAGE
    capsys.readouterr()
