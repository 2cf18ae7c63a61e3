import json

import pytest

from svdperturb.config import Config, load_config, save_config
from svdperturb.config.loader import camel_to_snake, convert_keys, snake_to_camel


def test_defaults():
    cfg = Config()
    assert cfg.fixed_point.max_iters == 200
    assert cfg.verify.trials == 10
    assert cfg.verify.kappa_target == 0.2
    assert cfg.certificates.tol_unitary is None
    assert cfg.report.indent == 2


def test_env_override(monkeypatch):
    monkeypatch.setenv("SVDPERTURB_FIXED_POINT__MAX_ITERS", "50")
    monkeypatch.setenv("SVDPERTURB_VERIFY__SEED", "7")
    cfg = load_config()
    assert cfg.fixed_point.max_iters == 50
    assert cfg.verify.seed == 7


def test_file_values_beat_env(monkeypatch, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"verify": {"maxDim": 4}}), encoding="utf-8")
    monkeypatch.setenv("SVDPERTURB_VERIFY__MAX_DIM", "6")
    assert load_config(path).verify.max_dim == 4


def test_save_and_load(tmp_path):
    cfg = Config()
    cfg.fixed_point.tol_fp = 1e-12
    cfg.report.indent = None
    path = save_config(cfg, tmp_path / "nested" / "config.json")
    raw = json.loads(path.read_text(encoding="utf-8"))
    assert raw["fixedPoint"]["tolFp"] == 1e-12
    assert "contaminationTol" in raw["certificates"]
    loaded = load_config(path)
    assert loaded.fixed_point.tol_fp == 1e-12
    assert loaded.report.indent is None


def test_default_path_under_home(tmp_path):
    path = save_config(Config())
    assert path == tmp_path / ".svdperturb" / "config.json"
    assert load_config() == Config()


@pytest.mark.parametrize("content", ["{not json", json.dumps({"verify": {"kappaTarget": 0.5}})])
def test_invalid_file_falls_back_to_defaults(tmp_path, content):
    path = tmp_path / "config.json"
    path.write_text(content, encoding="utf-8")
    assert load_config(path) == Config()


def test_case_conversion():
    assert camel_to_snake("maxIters") == "max_iters"
    assert camel_to_snake("tolFp") == "tol_fp"
    assert snake_to_camel("contamination_tol") == "contaminationTol"
    assert snake_to_camel("seed") == "seed"
    assert convert_keys({"fixedPoint": [{"maxIters": 1}]}) == {"fixed_point": [{"max_iters": 1}]}
