import csv
import io
import json

import pytest

from ripoly.cli import EXIT_CONFIG, EXIT_OK, EXIT_VERIFY, build_parser, config_from_args, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_zeros_n2(capsys):
    code, out, _ = run(capsys, "zeros", "--preset", "hypergeometric", "--n", "2")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert sorted(round(float(r["re"]), 12) for r in rows) == [-1.0, 1.0]
    assert all(float(r["residual"]) < 1e-12 for r in rows)


def test_zeros_R_on_circle(capsys):
    code, out, _ = run(capsys, "zeros", "--which", "R", "--n", "6")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert all(abs(float(r["modulus"]) - 1) < 1e-10 for r in rows)


def test_gen_Q2(capsys):
    code, out, _ = run(capsys, "gen", "--n", "2", "--which", "Q")
    assert code == EXIT_OK
    rows = [r for r in csv.DictReader(io.StringIO(out)) if r["n"] == "2"]
    assert [float(r["re"]) for r in rows] == pytest.approx([-0.125, 0, 0.125], abs=1e-15)


def test_gen_all_to_file(capsys, tmp_path):
    target = tmp_path / "all.csv"
    code, out, _ = run(capsys, "gen", "--n", "3", "--which", "all", "-o", str(target))
    assert code == EXIT_OK and out == ""
    fams = {r["family"] for r in csv.DictReader(target.open())}
    assert fams == {"P", "Q", "R", "phi"}


def test_params_file(capsys, tmp_path):
    desc = {"rho": [1.5, 0.5, 1.25, 2, 0.75, 1, 1.4], "beta": [3, -0.6666666666666666, 2.5, -0.5, 1.3333333333333333, 2, -1.5],
            "tau": [-0.5, 0.3333333333333333, -0.75, 0.2, -1, 0.6666666666666666, 0.5]}
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"tables": desc}))
    code, out, _ = run(capsys, "gen", "--params", str(path), "--n", "2")
    assert code == EXIT_OK
    rows = [r for r in csv.DictReader(io.StringIO(out)) if r["n"] == "2"]
    assert [float(r["re"]) for r in rows] == pytest.approx([7 / 4, -5 / 2, 3 / 4], rel=1e-12)


def test_bad_c_is_config_error(capsys):
    code, _, err = run(capsys, "gen", "--b", "0.5", "--c", "0.5")
    assert code == EXIT_CONFIG and "error" in err


def test_missing_params_file(capsys, tmp_path):
    code, _, _ = run(capsys, "gen", "--params", str(tmp_path / "nope.json"))
    assert code == EXIT_CONFIG


def test_short_table_is_config_error(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"tables": {"rho": [1, 2], "beta": [3, 2], "tau": [0.5, 0.5]}}))
    code, _, _ = run(capsys, "gen", "--params", str(path), "--n", "6")
    assert code == EXIT_CONFIG


def test_preset_and_params_exclusive(capsys, tmp_path):
    code, _, _ = run(capsys, "gen", "--preset", "hypergeometric", "--params", "x.json")
    assert code == EXIT_CONFIG


def test_config_file_and_override(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"n": 5, "b": 1.5, "which": "R"}))
    args = build_parser().parse_args(["gen", "--config", str(path), "--n", "3"])
    cfg = config_from_args(args)
    assert cfg.n == 3 and cfg.b == 1.5 and cfg.which == "R"
    assert cfg.hyper_params().c == 4.0


def test_config_unknown_key(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"bogus": 1}))
    code, _, err = run(capsys, "gen", "--config", str(path))
    assert code == EXIT_CONFIG and "bogus" in err


def test_verify_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--preset", "hypergeometric", "--seed", "3", "--trials", "3")
    code2, out2, _ = run(capsys, "verify", "--preset", "hypergeometric", "--seed", "3", "--trials", "3")
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert "FAIL" not in out1
    assert out1.strip().splitlines()[-1].endswith("skipped")


def test_verify_failure_exit(capsys, tmp_path):
    # c = 1.8 is a valid family but outside the para-orthogonal class; verify still passes
    # its applicable checks and skips the rest
    code, out, _ = run(capsys, "verify", "--b", "0.5", "--c", "1.8", "--trials", "2")
    assert code in (EXIT_OK, EXIT_VERIFY)
    assert "SKIP" in out


def test_verify_needs_two(capsys):
    code, _, _ = run(capsys, "verify", "--n", "1")
    assert code == EXIT_CONFIG


def test_figure(capsys, tmp_path):
    code, out, _ = run(capsys, "figure", "--b", "0.5", "--out-dir", str(tmp_path))
    assert code == EXIT_OK
    csv_path = tmp_path / "zeros_b0.5_n12.csv"
    svg_path = tmp_path / "zeros_b0.5_n12.svg"
    assert csv_path.exists() and svg_path.exists()
    rows = list(csv.DictReader(csv_path.open()))
    assert len(rows) == 2 * 12 + 11 + 12 + 2 * 12
    assert svg_path.read_text().startswith("<svg")


def test_figure_rejects_other_c(capsys, tmp_path):
    code, _, _ = run(capsys, "figure", "--b", "0.5", "--c", "3", "--out-dir", str(tmp_path))
    assert code == EXIT_CONFIG
