"""Tests for the command-line front end: exit codes, output files,
config handling and determinism."""

import csv
import json

import pytest

from steerseq.cli import (
    EXIT_INFEASIBLE,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    main,
    reproduce_table1,
)


def test_bounds_stdout(capsys):
    assert main(["bounds"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "n=2  bound=0.707107" in out
    assert "n=16  bound=0.503000" in out


def test_bounds_json_output(tmp_path):
    path = tmp_path / "bounds.json"
    assert main(["bounds", "--output", str(path), "--format", "json"]) == EXIT_OK
    data = json.loads(path.read_text())
    assert data["3"] == pytest.approx(0.5773502691896258)
    assert len(data) == 6


def test_eval_reports_violations(tmp_path, capsys):
    path = tmp_path / "eval.csv"
    code = main(
        [
            "eval", "--n", "3", "--mu", "1", "--alice", "0.76,1",
            "--bob", "0.76,1", "--output", str(path),
        ]
    )
    assert code == EXIT_OK
    assert "violations=4/4" in capsys.readouterr().out
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 4
    assert all(row["violated"] == "1" for row in rows)


def test_eval_verify_flag(capsys):
    assert main(["eval", "--n", "2", "--alice", "0.8", "--bob", "1",
                 "--verify"]) == EXIT_OK
    assert "oracle max deviation" in capsys.readouterr().out


def test_ranges_json(tmp_path):
    path = tmp_path / "ranges.json"
    code = main(
        ["ranges", "--n", "6", "--alices", "3", "--output", str(path),
         "--format", "json"]
    )
    assert code == EXIT_OK
    data = json.loads(path.read_text())
    assert set(data) == {"A1", "A2", "A3", "B1"}
    assert data["A3"] == [1.0, 1.0]


def test_infeasible_exit_code():
    assert main(["ranges", "--n", "2", "--alices", "3"]) == EXIT_INFEASIBLE
    assert main(["minpurity", "--n", "2", "--alices", "3"]) == EXIT_INFEASIBLE


def test_input_error_exit_codes(tmp_path):
    assert main(["ranges", "--n", "7", "--alices", "1"]) == EXIT_INPUT_ERROR
    assert main(["eval", "--n", "3", "--alice", "abc", "--bob", "1"]) \
        == EXIT_INPUT_ERROR
    missing = tmp_path / "nope.json"
    assert main(["--config", str(missing), "bounds"]) == EXIT_INPUT_ERROR
    assert main(["maxalices"]) == EXIT_INPUT_ERROR


def test_maxalices_all(tmp_path):
    path = tmp_path / "max.json"
    assert main(["maxalices", "--all", "--output", str(path),
                 "--format", "json"]) == EXIT_OK
    data = json.loads(path.read_text())
    assert data == {"2": 2, "3": 3, "4": 3, "6": 4, "10": 4, "16": 5}


def test_minpurity_output(tmp_path, capsys):
    assert main(["minpurity", "--n", "3", "--alices", "1"]) == EXIT_OK
    assert "min_purity=0.577" in capsys.readouterr().out


def test_region2x2_csv(tmp_path):
    path = tmp_path / "region.csv"
    code = main(
        ["region2x2", "--n", "3", "--grid-step", "0.01",
         "--output", str(path)]
    )
    assert code == EXIT_OK
    rows = list(csv.DictReader(path.open()))
    assert rows
    assert set(rows[0]) == {"lam1", "eta1", "S11", "S12", "S21", "S22",
                            "in_region"}


def test_check3x2(capsys):
    assert main(["check3x2", "--n", "16", "--grid-step", "0.02"]) == EXIT_OK
    assert "overlap=no" in capsys.readouterr().out
    assert main(["check3x2", "--n", "16", "--grid-step", "0.02",
                 "--bobs", "1"]) == EXIT_OK
    assert "overlap=yes" in capsys.readouterr().out


def test_verify_command(capsys):
    assert main(["verify", "--count", "20"]) == EXIT_OK
    out = capsys.readouterr().out
    deviation = float(out.split("max deviation=")[1])
    assert deviation < 1e-10


def test_config_file_defaults_and_override(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"n": 3, "alices": 2, "mu": 1.0}))
    assert main(["--config", str(config), "ranges"]) == EXIT_OK
    first = capsys.readouterr().out
    assert "n=3  alices=2" in first
    # explicit flag wins over the file value
    assert main(["--config", str(config), "ranges", "--n", "6"]) == EXIT_OK
    assert "n=6  alices=2" in capsys.readouterr().out


def test_output_determinism(tmp_path):
    paths = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        assert main(["ranges", "--n", "16", "--alices", "4",
                     "--output", str(path)]) == EXIT_OK
        paths.append(path)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_json_output_reparses(tmp_path):
    path = tmp_path / "region.json"
    assert main(["region2x2", "--n", "3", "--grid-step", "0.02",
                 "--output", str(path), "--format", "json"]) == EXIT_OK
    data = json.loads(path.read_text())
    assert data["extent"] is not None
    assert all(0.0 <= v <= 1.0 for cell in data["cells"] for v in cell)


def test_reproduce_table_csv(tmp_path, capsys):
    path = tmp_path / "table.csv"
    assert reproduce_table1(str(path)) == EXIT_OK
    rows = list(csv.DictReader(path.open()))
    # every reference row appears with interval and purity entries
    keys = {(row["n_settings"], row["n_alices"]) for row in rows}
    assert len(keys) == 18
    observers = {row["observer"] for row in rows}
    assert "mu_min" in observers and "A1" in observers
    for row in rows:
        assert float(row["deviation_lo"]) >= 0.0
