"""On-disk cache behavior and the command-line interface."""

import json
import subprocess
import sys

import pytest

from lambdaforge import symfun
from lambdaforge.cache import PolyCache
from lambdaforge.cli import main
from lambdaforge.symfun import compute_Pnm


@pytest.fixture(autouse=True)
def reset_disk_cache():
    yield
    symfun.set_disk_cache(None)


def test_cache_round_trip(tmp_path):
    cache = PolyCache(tmp_path)
    up = compute_Pnm(2, 2)
    cache.store(up.cache_key, up.to_json_dict())
    loaded = cache.load(up.cache_key)
    assert loaded == up.to_json_dict()
    again = symfun.UniversalPoly.from_json_dict("Pnm", (2, 2), loaded)
    assert again.poly == up.poly


def test_cache_missing_key_is_none(tmp_path):
    assert PolyCache(tmp_path).load("Pn/99") is None


def test_cache_detects_corruption(tmp_path):
    cache = PolyCache(tmp_path)
    up = compute_Pnm(2, 2)
    cache.store(up.cache_key, up.to_json_dict())
    path = cache._path(up.cache_key)
    data = json.loads(path.read_text())
    data["poly"]["terms"][0]["num"] = "999"
    path.write_text(json.dumps(data))
    assert cache.load(up.cache_key) is None
    assert up.cache_key in cache.corrupt_seen
    # and the compute path rewrites a good entry
    symfun.set_disk_cache(cache)
    symfun._MEM_CACHE.pop("Pnm/2/2", None)
    recomputed = compute_Pnm(2, 2)
    assert recomputed.poly == up.poly
    assert cache.load(up.cache_key) == up.to_json_dict()


def test_cache_clear_and_stats(tmp_path):
    cache = PolyCache(tmp_path)
    cache.store("Pn/1", compute_Pnm(1, 1).to_json_dict())
    stats = cache.stats()
    assert stats["entries"] == 1 and stats["bytes"] > 0
    assert cache.clear() == 1
    assert cache.stats()["entries"] == 0


def test_cache_rejects_traversal(tmp_path):
    with pytest.raises(ValueError):
        PolyCache(tmp_path).load("../escape")


def test_cli_univpoly_pn(capsys):
    assert main(["univpoly", "pn", "--n", "2"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "s1^2*σ2 + s2*σ1^2 - 2*s2*σ2"


def test_cli_univpoly_pnm(capsys):
    assert main(["univpoly", "pnm", "--n", "1", "--m", "3"]) == 0
    assert capsys.readouterr().out.strip() == "s3"


def test_cli_univpoly_nu_json(capsys):
    assert main(["univpoly", "nu", "--n", "2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["key"] == "nu/2"
    assert payload["poly"]["vars"] == ["s1", "s2"]


def test_cli_verify_passes_and_is_deterministic(capsys, tmp_path):
    args = ["verify", "lambda", "--model", "torus2", "--samples", "3", "--seed", "7",
            "--format", "json", "--cache", str(tmp_path)]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    report = json.loads(first)
    assert report["seed"] == 7
    assert all(c["pass"] for c in report["checks"])


def test_cli_verify_gamma(capsys):
    assert main(["verify", "gamma", "--model", "s2", "--samples", "2", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_cli_verify_splitting(capsys):
    assert main(["verify", "splitting", "--seed", "0"]) == 0


def test_cli_verify_diffk_and_adams(capsys):
    assert main(["verify", "diffk", "--model", "heis3", "--samples", "2", "--seed", "4"]) == 0
    assert main(["verify", "adams", "--model", "torus2", "--samples", "2", "--seed", "5"]) == 0
    assert main(["verify", "pre-lambda", "--model", "s2", "--samples", "2", "--seed", "6"]) == 0


def test_cli_verify_equivariant(capsys):
    assert main([
        "verify", "equivariant", "--model", "torus2", "--group", "zxz3",
        "--samples", "2", "--seed", "8", "--format", "json",
    ]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["context"] == "equivariant:torus2:zxz3"


def test_cli_model_list(capsys):
    assert main(["model", "list"]) == 0
    out = capsys.readouterr().out
    assert "torus4" in out and "heis3" in out


def test_cli_model_validate(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({
        "name": "tiny",
        "top_degree": 2,
        "generators": [{"name": "e", "degree": 1}],
        "differential": [],
        "relations": [],
        "group": {"free_rank": 1, "torsion": [2]},
    }))
    assert main(["model", "validate", "--spec", str(good)]) == 0
    out = capsys.readouterr().out
    assert "valid: tiny" in out and "Z x Z/2" in out

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "name": "broken",
        "top_degree": 4,
        "generators": [{"name": "u", "degree": 2}],
        "differential": [{"of": "u", "value": "u^2"}],
        "relations": [],
    }))
    assert main(["model", "validate", "--spec", str(bad)]) == 1


def test_cli_verify_with_spec_model(tmp_path, capsys):
    spec = tmp_path / "model.json"
    spec.write_text(json.dumps({
        "name": "spec-torus",
        "top_degree": 2,
        "generators": [
            {"name": "da", "degree": 1},
            {"name": "db", "degree": 1},
        ],
        "differential": [],
        "relations": [],
    }))
    code = main(["verify", "lambda", "--spec", str(spec), "--samples", "2", "--seed", "3"])
    assert code == 0


def test_cli_cache_commands(tmp_path, capsys):
    assert main(["univpoly", "pnm", "--n", "2", "--m", "2", "--cache", str(tmp_path)]) == 0
    capsys.readouterr()
    assert main(["cache", "stats", "--cache", str(tmp_path)]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["entries"] >= 1
    assert main(["cache", "clear", "--cache", str(tmp_path)]) == 0


def test_cli_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_cli_failure_exit_code_planted():
    # a failing check must exit 1: drive the report path directly
    from lambdaforge.axioms import verify_axioms
    from lambdaforge.cli import _emit_report
    from lambdaforge.contexts import broken_context

    report = verify_axioms(broken_context(), "pre-lambda", samples=1, seed=0)
    assert _emit_report(report, "json") == 1


def test_cli_subprocess_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "lambdaforge.cli", "univpoly", "pn", "--n", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "s1*σ1"
