import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from thetakit.cache import CACHE_VERSION, ClosedFormCache
from thetakit.cli import main
from thetakit.graded_poly import GradedPoly


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("THETAKIT_CACHE", str(tmp_path / "cache.json"))

    def _run(*argv):
        try:
            code = main(list(argv))
        except SystemExit as exc:
            code = exc.code
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def test_theta1(run):
    code, out, _ = run("theta1", "--nu", "2", "--format", "latex")
    assert code == 0
    assert "\\frac{1}{3}\\eta^3(5P^2-2Q)" in out and "=2\\cdot" in out
    code, out, _ = run("theta1", "--nu", "0")
    assert code == 0 and "2·η³" in out
    code, _, err = run("theta1", "--nu", "-1")
    assert code == 1 and "nonnegative" in err


def test_theta4(run):
    code, out, _ = run("theta4", "--nu", "1")
    assert code == 0 and out.strip().endswith("(1/3)(-P + P2)·w")
    _, out, _ = run("theta4", "-n", "3", "-f", "json")
    data = json.loads(out)
    assert data["kind"] == "theta4" and data["nu"] == 3 and data["poly"]["weight"] == 6
    _, out, _ = run("theta4", "--order", "3")
    assert "= 0" in out and "identically zero" in out
    _, out, _ = run("theta4", "--nu", "0")
    assert "ratio 1" in out
    code, _, _ = run("theta4")
    assert code == 1


def test_phi_and_eisenstein(run):
    code, out, _ = run("phi", "--k", "9")
    assert code == 0 and out.strip() == "Φ_9 = (1/264)(-Q*R + 1)"
    code, _, _ = run("phi", "--k", "4")
    assert code == 1
    _, out, _ = run("eisenstein", "--weight", "12", "-f", "latex")
    assert out.strip() == "E_{12}=\\frac{1}{691}(441Q^3+250R^2)"


def test_verify_exit_codes(run):
    code, out, _ = run("verify", "--target", "theta1", "--order", "7", "--window", "200")
    assert code == 0 and "match" in out
    code, out, _ = run("verify", "--target", "theta4", "--order", "4", "-w", "50", "-f", "json")
    assert code == 0 and json.loads(out)["verdict"] == "match"
    code, _, _ = run("verify", "--target", "theta1", "--order", "8")
    assert code == 1
    code, _, _ = run("verify", "--target", "bogus", "--order", "8")
    assert code == 1


def test_verify_mismatch_exit_code(run, monkeypatch):
    from thetakit import cli
    from thetakit.graded_poly import P
    from thetakit.verifier import verify_theta1

    monkeypatch.setattr(cli, "verify", lambda t, o, w: verify_theta1(1, w, P - 2))
    code, out, _ = run("verify", "--target", "theta1", "--order", "3", "-w", "20")
    assert code == 2 and "mismatch" in out


def test_internal_error_exit_code(run, monkeypatch):
    from thetakit import cli

    def boom(*a, **k):
        raise RuntimeError("bug")

    monkeypatch.setattr(cli, "theta1_closed_form", boom)
    code, _, err = run("theta1", "--nu", "3", "--no-cache")
    assert code == 3 and "internal error" in err


def test_errata(run):
    code, out, _ = run("errata", "--window", "200")
    assert code == 0
    ids = {f["id"] for f in json.loads(out)}
    assert "s3_9_denominator" in ids


def test_table(run, tmp_path):
    out_path = tmp_path / "table.json"
    code, _, _ = run("table", "--max-nu", "3", "--out", str(out_path), "--window", "80")
    assert code == 0
    rows = json.loads(out_path.read_text())
    kinds = [r["kind"] for r in rows]
    assert kinds.count("theta1") == 4 and kinds.count("theta4") == 3
    assert kinds.count("phi") == 4 and kinds.count("eisenstein") == 4
    assert all(r["verification"]["verdict"] == "match" for r in rows)
    assert rows[0]["verification"]["window"] == 80


def test_table_io_error(run, tmp_path):
    code, _, err = run("table", "--max-nu", "1", "--out", str(tmp_path / "missing" / "t.json"))
    assert code == 1 and "missing" in err


def test_formats_share_terms(run):
    _, human, _ = run("phi", "--k", "15")
    _, latex, _ = run("phi", "--k", "15", "-f", "latex")
    _, js, _ = run("phi", "--k", "15", "-f", "json")
    poly = GradedPoly.from_json(json.loads(js)["poly"])
    assert len(poly) == 3
    for coeff in ("1617", "2000", "3617", "16320"):
        assert coeff in human and coeff in latex


class TestCache:
    def test_warm_equals_cold(self, run, tmp_path):
        cache = tmp_path / "cache.json"
        cmds = [("theta1", "--nu", "6"), ("theta4", "--nu", "4", "-f", "latex"), ("phi", "--k", "13", "-f", "json")]
        cold = [run(*c) for c in cmds]
        assert cache.exists()
        data = json.loads(cache.read_text())
        assert data["version"] == CACHE_VERSION
        assert {"theta1:6", "theta4:4", "phi:13"} <= set(data["entries"])
        warm = [run(*c) for c in cmds]
        assert cold == warm
        no_cache = [run(*c, "--no-cache") for c in cmds]
        assert no_cache == cold

    def test_warm_cache_is_actually_read(self, run, tmp_path):
        cache = tmp_path / "cache.json"
        run("phi", "--k", "7")
        data = json.loads(cache.read_text())
        data["entries"]["phi:7"]["poly"] = GradedPoly.constant(42).to_json()
        cache.write_text(json.dumps(data))
        _, out, _ = run("phi", "--k", "7")
        assert "42" in out

    def test_version_mismatch_ignored(self, run, tmp_path):
        cache = tmp_path / "cache.json"
        cache.write_text(json.dumps({"version": 999, "entries": {"phi:7": {"poly": "garbage"}}}))
        code, out, _ = run("phi", "--k", "7")
        assert code == 0 and "480" in out
        assert json.loads(cache.read_text())["version"] == CACHE_VERSION

    def test_corrupt_file_ignored(self, run, tmp_path):
        (tmp_path / "cache.json").write_text("{not json")
        code, out, _ = run("phi", "--k", "7")
        assert code == 0 and "480" in out

    def test_explicit_path_and_no_tmp_leftovers(self, run, tmp_path):
        path = tmp_path / "sub" / "c.json"
        run("theta1", "--nu", "2", "--cache", str(path))
        assert path.exists()
        assert [p.name for p in path.parent.iterdir()] == ["c.json"]

    def test_flush_merges(self, tmp_path):
        path = tmp_path / "c.json"
        a, b = ClosedFormCache(path), ClosedFormCache(path)
        a.get_or_compute("x", lambda: {"v": 1})
        b.get_or_compute("y", lambda: {"v": 2})
        a.flush()
        b.flush()
        assert set(json.loads(path.read_text())["entries"]) == {"x", "y"}

    def test_concurrent_processes(self, tmp_path):
        path = tmp_path / "shared.json"
        env = {**os.environ, "THETAKIT_CACHE": str(path)}
        procs = [
            subprocess.Popen(
                [sys.executable, "-m", "thetakit", "theta1", "--nu", str(nu)],
                env=env, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
            )
            for nu in range(6)
        ]
        for p in procs:
            _, err = p.communicate(timeout=120)
            assert p.returncode == 0, err
        data = json.loads(path.read_text())
        assert data["version"] == CACHE_VERSION
        assert all(k.startswith("theta1:") for k in data["entries"])
