import json
import subprocess
import sys

import pytest

from quasihopf import cli
from quasihopf.errors import ConfigParseError, InvalidParams, UnknownCheck, UnknownMatrix
from quasihopf.suite import REGISTRY

MIXED = """
seed = 7
[[check]]
name = "face.cocycle"
params = { N = 2, D = 2 }
[[check]]
name = "face.cocycle"
params = { N = 2, D = 2, corrupt = true }
[[check]]
name = "qnum.binomial"
grid = { points = [2, 3] }
"""


def test_run_check_examples():
    rep = cli.run_check("face.cocycle", {"N": 2, "D": 2})
    assert rep.passed and rep.residual == 0
    assert cli.run_check("vertex.ybe").passed
    with pytest.raises(UnknownCheck):
        cli.run_check("nope", {})
    with pytest.raises(InvalidParams):
        cli.run_check("face.cocycle", {"shift": 1})


def test_reports_record_seed_and_conventions():
    d = cli.run_check("affine.gauge", {"points": 3}, seed=5).to_dict()
    assert d["seed"] == 5
    assert d["convention"]["basis_order"] == ["v1v1", "v1v2", "v2v1", "v2v2"]
    assert d["pass"] == (d["residual"] <= d["tolerance"])


def test_mixed_suite(tmp_path):
    cfg = tmp_path / "mixed.toml"
    cfg.write_text(MIXED)
    code, reports = cli.run_suite(cfg)
    assert code == 1
    assert [r["pass"] for r in reports] == [True, False, True, True]
    assert [r["params"].get("points") for r in reports][2:] == [2, 3]


def test_empty_suite(tmp_path):
    cfg = tmp_path / "empty.toml"
    cfg.write_text("")
    assert cli.run_suite(cfg) == (0, [])


def test_bad_config(tmp_path):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("[[check]]\nparams = {}\n")
    with pytest.raises(ConfigParseError):
        cli.run_suite(cfg)
    cfg.write_text("x = [")
    with pytest.raises(ConfigParseError):
        cli.run_suite(cfg)


def test_parallel_run_keeps_order(tmp_path):
    cfg = tmp_path / "mixed.toml"
    cfg.write_text(MIXED)
    assert cli.run_suite(cfg, jobs=3) == cli.run_suite(cfg)


def test_matrices():
    m = cli.emit_matrix("r_elliptic", {"z": 1})
    w = m["weights"]
    assert w[1][1] == pytest.approx([0, 0], abs=1e-15) and w[1][2] == pytest.approx([1, 0])
    assert m["prefactor"] is None and m["matrix"] is None
    e = cli.emit_matrix("e_vv", {"zeta": 0})["matrix"]
    assert e == [[[float(i == j), 0.0] for j in range(4)] for i in range(4)]
    sym = cli.emit_matrix("f_sl2")["matrix"]
    assert "w" in sym[1][2] and sym[2][1] == "0"
    with pytest.raises(UnknownMatrix):
        cli.emit_matrix("nope")


def test_param_parsing():
    assert cli.parse_params(["N=3", "z=0.5+0.1j", "drop_d=true", "conjugator=identity", "p=0.2"]) == {
        "N": 3, "z": 0.5 + 0.1j, "drop_d": True, "conjugator": "identity", "p": 0.2,
    }
    with pytest.raises(InvalidParams):
        cli.parse_params(["N"])


def test_main_exit_codes(tmp_path, capsys, monkeypatch):
    assert cli.main(["check", "face.counit"]) == 0
    assert json.loads(capsys.readouterr().out)["pass"] is True
    assert cli.main(["check", "face.cocycle", "--param", "corrupt=true", "--param", "N=2", "--param", "D=2"]) == 1
    capsys.readouterr()
    assert cli.main(["check", "nope"]) == 2
    monkeypatch.setenv(cli.OUT_DIR_ENV, str(tmp_path))
    assert cli.main(["matrix", "r_trig", "--param", "z=0.3", "--out", "r.json"]) == 0
    assert json.loads((tmp_path / "r.json").read_text())["name"] == "r_trig"
    assert cli.main(["list"]) == 0
    listing = capsys.readouterr().out
    assert all(name in listing for name in REGISTRY)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "quasihopf", "check", "face.counit"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["pass"]
