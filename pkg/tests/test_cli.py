import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from svdperturb import __version__
from svdperturb.cli import app
from svdperturb.cli.matrix_io import parse_matrix
from svdperturb.cli.report import ErrorReport, Report, dump_json
from svdperturb.config import Config, load_config
from svdperturb.errors import MatrixFileError


def read_report(path):
    return json.loads(path.read_text(encoding="utf-8"))


def write_matrix(path, rows):
    rows = np.asarray(rows)
    lines = [f"{rows.shape[0]} {rows.shape[1]}"] + [" ".join(repr(float(x)) for x in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


# ============================================================================
# matrix files
# ============================================================================


def test_parse_identity():
    assert_allclose(parse_matrix("2 2\n1 0\n0 1\n"), np.eye(2))


def test_parse_complex_entry():
    assert parse_matrix("# comment\n\n1 1\n(0,1)\n")[0, 0] == 1j


def test_parse_row_count_mismatch():
    with pytest.raises(MatrixFileError, match="expected 2 rows, found 1"):
        parse_matrix("2 1\n1\n")


def test_parse_malformed_entry_has_position():
    with pytest.raises(MatrixFileError) as info:
        parse_matrix("1 2\n1 x\n")
    assert info.value.details == {"line": 2, "column": 3}


def test_parse_entry_count_and_header():
    with pytest.raises(MatrixFileError, match="expected 2 entries"):
        parse_matrix("1 2\n1\n")
    with pytest.raises(MatrixFileError, match="header"):
        parse_matrix("two by two\n")
    with pytest.raises(MatrixFileError, match="positive"):
        parse_matrix("0 2\n")


def test_report_reals_read_back_exactly():
    values = {"a": 0.1 + 0.2, "b": 1 / 3, "c": 5e-324, "d": 1.7976931348623157e308, "e": -2.5}
    data = json.loads(dump_json(Report(tool_version=__version__, command="bound", timings=values)))
    assert data["timings"] == values


def test_error_report_is_json_safe():
    text = dump_json(ErrorReport(
        tool_version=__version__,
        command="bound",
        error={"type": "X", "details": {"kappa": float("inf"), "shape": np.array([2, 3]), "z": np.float64(0.5)}},
    ))
    data = json.loads(text)
    assert data["error"]["details"] == {"kappa": None, "shape": [2, 3], "z": 0.5}


# ============================================================================
# bound
# ============================================================================


def test_bound_on_demo(runner, demo_dir, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["bound", "--g", str(demo_dir / "g.txt"), "--e", str(demo_dir / "e.txt"), "--r", "2", "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = read_report(out)
    assert report["command"] == "bound"
    assert report["ok"] is True
    assert report["inputs"]["g"].startswith("sha256:")
    assert report["corrected"]["offdiag_residual"] < 1e-9
    assert report["gap_report"]["condition_met"] is True
    assert report["comparison"]["chain_ok"] and report["comparison"]["dominance_ok"]
    assert report["bounds"]
    assert all(b["satisfied"] for b in report["bounds"] if b["condition_met"])
    assert set(report["timings"]) == {"parse", "gap", "rotations", "corrected", "compare"}


def test_bound_is_deterministic_apart_from_timings(runner, demo_dir, tmp_path):
    args = ["bound", "--g", str(demo_dir / "g.txt"), "--e", str(demo_dir / "e.txt"), "--r", "2", "--norm", "frobenius"]
    docs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        assert runner.invoke(app, [*args, "--out", str(out)]).exit_code == 0
        doc = read_report(out)
        doc.pop("timings")
        docs.append(doc)
    assert docs[0] == docs[1]


def test_bound_with_zero_perturbation(runner, demo_dir, tmp_path):
    e = write_matrix(tmp_path / "zero.txt", np.zeros((5, 4)))
    out = tmp_path / "report.json"
    result = runner.invoke(app, ["bound", "--g", str(demo_dir / "g.txt"), "--e", str(e), "--r", "2", "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = read_report(out)
    assert report["rotation"]["gamma_spectral"] == 0.0
    assert report["rotation"]["omega_spectral"] == 0.0
    assert report["corrected"]["rotation_norm"] == 0.0
    assert all(b["satisfied"] for b in report["bounds"])


def test_bound_rejects_bad_split(runner, demo_dir):
    result = runner.invoke(app, ["bound", "--g", str(demo_dir / "g.txt"), "--e", str(demo_dir / "e.txt"), "--r", "0"])
    assert result.exit_code == 2
    result = runner.invoke(app, ["bound", "--g", str(demo_dir / "g.txt"), "--e", str(demo_dir / "e.txt"), "--r", "4"])
    assert result.exit_code == 2
    assert "ShapeError" in result.output


def test_bound_rejects_malformed_file(runner, demo_dir, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n1 0\n0 oops\n", encoding="utf-8")
    result = runner.invoke(app, ["bound", "--g", str(bad), "--e", str(demo_dir / "e.txt"), "--r", "1"])
    assert result.exit_code == 2
    assert "MatrixFileError" in result.output


def test_bound_needs_both_unitaries(runner, demo_dir):
    result = runner.invoke(
        app, ["bound", "--g", str(demo_dir / "g.txt"), "--e", str(demo_dir / "e.txt"), "--r", "2", "--u", str(demo_dir / "g.txt")]
    )
    assert result.exit_code == 2


# ============================================================================
# verify
# ============================================================================


def test_verify_sylvester(runner, tmp_path):
    out = tmp_path / "verify.json"
    result = runner.invoke(app, ["verify", "--suite", "sylvester", "--trials", "10", "--seed", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = read_report(out)
    assert report["ok"] is True
    assert report["inputs"] == {"suite": "sylvester", "trials": "10", "seed": "1", "max_dim": "8"}
    assert {p["suite"] for p in report["properties"]} == {"sylvester"}
    assert all(p["failed"] == 0 and p["trials"] == 10 for p in report["properties"])


def test_verify_zero_trials(runner, tmp_path):
    out = tmp_path / "verify.json"
    result = runner.invoke(app, ["verify", "--trials", "0", "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = read_report(out)
    assert report["properties"]
    assert all(p["trials"] == 0 for p in report["properties"])


def test_verify_unknown_suite(runner):
    assert runner.invoke(app, ["verify", "--suite", "nope"]).exit_code == 2


# ============================================================================
# sintheta
# ============================================================================


def sintheta_args(demo_dir, **override):
    files = {"g": "g.txt", "u1t": "u1t.txt", "v1t": "v1t.txt", "g1t": "g1t.txt"}
    args = ["sintheta"]
    for key, name in files.items():
        args += [f"--{key}", str(override.get(key, demo_dir / name))]
    return args


def test_sintheta_on_demo(runner, demo_dir, tmp_path):
    out = tmp_path / "sintheta.json"
    result = runner.invoke(app, [*sintheta_args(demo_dir), "--out", str(out)])
    assert result.exit_code == 0, result.output
    section = read_report(out)["sintheta"]
    assert section["satisfied"] is True
    assert section["norm"] == "spectral"
    assert section["lhs"] <= section["bound"]


def test_sintheta_rejects_non_orthonormal_basis(runner, demo_dir, tmp_path):
    skewed = write_matrix(tmp_path / "u1t.txt", np.ones((5, 2)))
    result = runner.invoke(app, sintheta_args(demo_dir, u1t=skewed))
    assert result.exit_code == 1
    assert "CertificateError" in result.output


# ============================================================================
# schema / version / config
# ============================================================================


def test_schema_lists_report_sections(runner):
    result = runner.invoke(app, ["schema"])
    assert result.exit_code == 0
    schema = json.loads(result.output)
    assert {"bounds", "properties", "timings", "gap_report"} <= set(schema["properties"])


def test_version(runner):
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert f"v{__version__}" in result.output


def test_config_init(runner, tmp_path):
    path = tmp_path / "cfg" / "config.json"
    result = runner.invoke(app, ["config", "init", "--path", str(path)])
    assert result.exit_code == 0, result.output
    assert load_config(path) == Config()
    assert "fixedPoint" in json.loads(path.read_text(encoding="utf-8"))

    path.write_text("{}", encoding="utf-8")
    result = runner.invoke(app, ["config", "init", "--path", str(path)], input="n\n")
    assert result.exit_code == 0
    assert path.read_text(encoding="utf-8") == "{}"
