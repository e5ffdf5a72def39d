import csv
import io
import json
import math

import pytest

from korenblum import __version__
from korenblum.cli import fmt12, main, monotone_flags, parse_grid
from korenblum.errors import ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_fmt12():
    assert fmt12(1.0) == "1.00000000000"
    assert fmt12(0.5) == "0.500000000000"
    assert fmt12(0.8838834764831844) == "0.883883476483"
    assert fmt12(0.0) == "0.00000000000"
    assert fmt12(3) == "3"
    assert "e" not in fmt12(1.5e-9)


def test_parse_grid():
    assert parse_grid("0.5:1.0:3") == [0.5, 0.75, 1.0]
    with pytest.raises(ConfigError):
        parse_grid("0.5:1.0:0")
    with pytest.raises(ConfigError):
        parse_grid("0.5:1.0")


def test_monotone_flags():
    assert monotone_flags([1.0, 0.9, 0.901, 0.95], increasing=False) == [1, 1, 1, 0]
    assert monotone_flags([0.1, 0.2, 0.199], increasing=True) == [1, 1, 1]


def test_norm(tmp_path, capsys):
    p = tmp_path / "one.json"
    p.write_text("[[1, 0]]")
    assert run(capsys, "norm", str(p))[:2] == (0, "1.00000000000\n")
    # 1.41421356237 is sqrt(2) cut at 12 digits, so the norm is 1 - 1.8e-12
    p.write_text("[[0, 0], [1.41421356237, 0]]")
    code, out, _ = run(capsys, "norm", str(p))
    assert code == 0
    assert abs(float(out) - 1.0) < 1e-11


def test_norm_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("[[1, 0],\n [2")
    code, out, err = run(capsys, "norm", str(p))
    assert code == 2 and out == ""
    assert "line 2" in err


def test_f1_single(capsys):
    code, out, _ = run(capsys, "f1", "--c", "0.8")
    assert code == 0
    (row,) = rows(out)
    assert float(row["c"]) == 0.8
    assert float(row["F1"]) == pytest.approx(0.883883476483, abs=1e-12)
    assert float(row["lower_bound"]) == pytest.approx(0.6, abs=1e-12)
    assert float(row["candidate[a=c,b=1/(2c)]"]) == pytest.approx(0.992430570086, abs=1e-12)


def test_f1_first_branch(capsys):
    _, out, _ = run(capsys, "f1", "--c", "0.5")
    (row,) = rows(out)
    assert float(row["F1"]) == 1.0
    assert row["candidate[trivial]"] == ""


def test_f1_grid(capsys):
    _, out, _ = run(capsys, "f1", "--grid", "0.71:1.0:30")
    vals = [float(r["F1"]) for r in rows(out)]
    assert len(vals) == 30
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_f1_domain_error(capsys):
    assert run(capsys, "f1", "--c", "1.5")[0] == 2


def test_dual_demo(capsys):
    code, out, _ = run(capsys, "dual-demo", "--r", "0.5", "--n-max", "8")
    assert code == 0
    table = rows(out)
    assert len(table) == 8
    assert float(table[0]["psi_max_sq"]) == pytest.approx(0.64, abs=1e-12)
    fn = [float(r["fn_max_sq"]) for r in table]
    assert all(b < a for a, b in zip(fn, fn[1:]))


def test_dual_demo_bad_r(capsys):
    assert run(capsys, "dual-demo", "--r", "1.2")[0] == 2


def test_sweep_empty_grid(capsys):
    assert run(capsys, "sweep", "--what", "f", "--c-grid", "0.5:0.9:0")[0] == 2


def test_search_config_error(capsys):
    assert run(capsys, "search", "--c", "1.5")[0] == 2
    assert run(capsys, "search", "--restarts", "0")[0] == 2


def test_search_writes_json_and_manifest(tmp_path, capsys):
    out = tmp_path / "res.json"
    code, _, _ = run(capsys, "search", "--n", "1", "--c", "0.8", "--restarts", "4", "--seed", "7",
                     "--out", str(out))
    data = json.loads(out.read_text())
    assert code == (0 if data["converged"] else 3)
    assert abs(data["objective"] - 1 / (math.sqrt(2) * 0.8)) < 1e-3
    man = json.loads((tmp_path / "res.json.manifest.json").read_text())
    assert man["command"] == "search" and man["seed"] == 7 and man["version"] == __version__
    assert man["config"]["search_config"]["simplex_tol"] > 0
    assert "started_at" not in data and "wall_clock_seconds" not in data


def test_manifest_replay_reproduces(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "search", "--c", "0.85", "--restarts", "2", "--seed", "5", "--out", str(a))
    run(capsys, "search", "--config", str(a) + ".manifest.json", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"c": 0.9, "restarts": 3, "seed": 2}))
    out = tmp_path / "r.json"
    run(capsys, "search", "--config", str(cfg), "--restarts", "2", "--out", str(out))
    echo = json.loads(out.read_text())["config"]
    assert echo["c"] == 0.9 and echo["restarts"] == 2 and echo["seed"] == 2


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": 1}))
    assert run(capsys, "search", "--config", str(cfg))[0] == 2


def test_search_fb_range(capsys):
    code, out, _ = run(capsys, "search", "--n", "1", "--c", "0.8", "--fb", "--restarts", "4")
    assert code in (0, 3)
    val = json.loads(out)["objective"]
    assert 0.139 <= val <= 0.640001


def test_nonconvergence_exit_code(tmp_path, capsys):
    # a one-evaluation budget cannot meet the simplex tolerance
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_iters": 1, "polish_rounds": 0, "restarts": 1}))
    code, out, err = run(capsys, "search", "--config", str(cfg))
    assert code == 3
    assert json.loads(out)["converged"] is False
    assert "did not converge" in err


def test_kappa_eps_error(capsys):
    assert run(capsys, "kappa", "--n", "1", "--eps", "0.5")[0] == 2
