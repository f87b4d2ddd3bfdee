"""End-to-end CLI behavior: exit codes, file formats, config handling."""

import json

import pytest

from shapeinv.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, RunConfig, main

CSV_HEADER = "n,E_closed,E_qhj,E_numeric,err_qhj_vs_closed,err_numeric_vs_closed"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list_all(capsys):
    code, out, _ = run(capsys, "list")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 12  # header + rule + ten classes
    assert lines[0].startswith("class")
    assert any(line.startswith("IIB2") for line in lines)
    assert "\x1b[" not in out  # no ANSI colors when not a tty


def test_list_single_class(capsys):
    code, out, _ = run(capsys, "list", "--class", "IB")
    assert code == EXIT_OK
    rows = out.strip().splitlines()[2:]
    assert len(rows) == 1 and rows[0].startswith("IB")
    assert "a < 0" in rows[0]


def test_list_unknown_class(capsys):
    code, _, err = run(capsys, "list", "--class", "XX")
    assert code == EXIT_USAGE
    assert "valid ids" in err


def test_spectrum_oscillator_csv(tmp_path, capsys):
    out_file = tmp_path / "spec.csv"
    code, out, _ = run(
        capsys, "spectrum", "--class", "IA", "--n-max", "3", "--out", str(out_file)
    )
    assert code == EXIT_OK
    assert "result: PASS" in out
    text = out_file.read_text()
    lines = text.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 5
    # repr() round-trips exactly; E_2 = 4 for omega = 2
    fields = lines[3].split(",")
    assert fields[0] == "2"
    assert float(fields[1]) == 4.0


def test_spectrum_reruns_byte_identical(tmp_path, capsys):
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "spectrum", "--class", "IIB2", "--n-max", "1", "--out", str(f1))
    run(capsys, "spectrum", "--class", "IIB2", "--n-max", "1", "--out", str(f2))
    assert f1.read_bytes() == f2.read_bytes()


def test_spectrum_json(tmp_path, capsys):
    out_file = tmp_path / "spec.json"
    code, _, _ = run(
        capsys, "spectrum", "--class", "IB", "--n-max", "2", "--format", "json",
        "--out", str(out_file),
    )
    assert code == EXIT_OK
    obj = json.loads(out_file.read_text())
    assert obj["pass"] is True
    assert obj["spec"]["class"] == "IB"
    assert [row["n"] for row in obj["rows"]] == [0, 1, 2]
    assert obj["rows"][1]["E_closed"] == 5.0


def test_spectrum_beyond_bound_count(capsys):
    code, _, err = run(capsys, "spectrum", "--class", "IB", "--n-max", "5")
    assert code == EXIT_USAGE
    assert "exceeds bound state count 2" in err


def test_spectrum_bad_parameters(capsys):
    code, _, err = run(capsys, "spectrum", "--class", "IIB3", "--a", "1", "--B", "0.5")
    assert code == EXIT_USAGE
    assert "B > a^2" in err


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"class": "IA", "omega": 2.0, "n_max": 1}))
    out_file = tmp_path / "out.csv"
    code, _, _ = run(
        capsys, "spectrum", "--config", str(cfg), "--n-max", "2", "--out", str(out_file)
    )
    assert code == EXIT_OK
    # the flag overrides the file: rows n = 0..2
    assert len(out_file.read_text().strip().splitlines()) == 4


def test_config_unknown_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"class": "IA", "frequency": 2.0}))
    code, _, err = run(capsys, "spectrum", "--config", str(cfg))
    assert code == EXIT_USAGE
    assert "unknown config keys" in err


def test_runconfig_roundtrip():
    cfg = RunConfig(class_id="IIB2", a=-4.0, B=-4.0, hbar=0.5, n_max=1, tol=1e-6)
    assert RunConfig.from_dict(cfg.to_dict()) == cfg


def test_verify_single_class(capsys):
    code, out, _ = run(capsys, "verify", "--class", "IA")
    assert code == EXIT_OK
    assert out.count("PASS") >= 5
    assert "FAIL" not in out
    assert "overall: PASS" in out


def test_verify_unknown_class(capsys):
    code, _, err = run(capsys, "verify", "--class", "nope")
    assert code == EXIT_USAGE


def test_wavefunction_export(tmp_path, capsys):
    out_file = tmp_path / "wf.csv"
    code, out, _ = run(
        capsys, "wavefunction", "--class", "IIB2", "--n", "1", "--out", str(out_file)
    )
    assert code == EXIT_OK
    lines = out_file.read_text().strip().splitlines()
    assert lines[0] == "x,psi_ladder,psi_closed,psi_numeric"
    meta = json.loads((tmp_path / "wf.csv.meta.json").read_text())
    assert meta["pass"] is True
    assert all(v <= 1e-4 for v in meta["pairwise_l2"].values())
    assert set(meta["pairwise_l2"]) == {
        "psi_ladder_vs_psi_closed",
        "psi_ladder_vs_psi_numeric",
        "psi_closed_vs_psi_numeric",
    }


def test_wavefunction_route_selection(tmp_path, capsys):
    out_file = tmp_path / "wf.csv"
    code, _, _ = run(
        capsys, "wavefunction", "--class", "IA", "--n", "0", "--routes",
        "ladder,numeric", "--out", str(out_file),
    )
    assert code == EXIT_OK
    assert out_file.read_text().splitlines()[0] == "x,psi_ladder,psi_numeric"


def test_qhj_residue_table(capsys):
    code, out, _ = run(capsys, "qhj", "--class", "IB", "--n-max", "2", "--show-residues")
    assert code == EXIT_OK
    assert "n=2  E=8.000000" in out
    # residue at the zero of the exponential variable for n=2: sqrt(9-8) = 1
    assert "a0=1.000000" in out
    for line in out.splitlines():
        if "|Q(E)|=" in line:
            assert float(line.split("|Q(E)|=")[1]) <= 1e-10


def test_qhj_spurious_multiplier_notice(capsys):
    code, out, _ = run(capsys, "qhj", "--class", "IIIB2", "--n-max", "1")
    assert code == EXIT_OK
    assert "multiplier: 2" in out


def test_custom_grid_flag(tmp_path, capsys):
    out_file = tmp_path / "wf.csv"
    code, _, _ = run(
        capsys, "wavefunction", "--class", "IA", "--grid=-8:8:2001",
        "--routes", "numeric", "--out", str(out_file),
    )
    assert code == EXIT_OK
    assert len(out_file.read_text().strip().splitlines()) == 2002
