import json

import pytest

from strongdepth.cli import main


@pytest.fixture(autouse=True)
def isolated_cache(monkeypatch, tmp_path):
    monkeypatch.setenv("STRONGDEPTH_CACHE_DIR", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "P:6,4", "--json")
    data = json.loads(out)
    assert code == 0 and data["vertices"] == 24 and data["edges"] == 68 and data["diameter"] == 5
    code, out, _ = run(capsys, "info", "C:3,1")
    assert code == 0 and "x1x2" in out


def test_depth_and_sdepth(capsys):
    code, out, _ = run(capsys, "depth", "C:4,3")
    assert code == 0 and "= 2" in out
    code, out, _ = run(capsys, "depth", "C:4,3", "--module", "ideal", "--json")
    assert code == 0 and json.loads(out)["depth"] == 3
    code, out, _ = run(capsys, "sdepth", "C:3,2", "--no-cache")
    assert code == 0 and "= 1" in out
    code, out, _ = run(capsys, "sdepth", "C:5,2", "--module", "pair", "--json", "--witness")
    data = json.loads(out)
    assert code == 0 and data["sdepth"]["lower"] >= 3 and "witness" in data["sdepth"]


def test_inconclusive_exit(capsys):
    code, out, _ = run(capsys, "sdepth", "P:8,1", "--module", "ideal", "--budget", "0", "--no-cache")
    assert code == 3 and "budget hit" in out


def test_usage_errors(capsys):
    assert run(capsys, "info", "Cdiamond:5")[0] == 2
    assert run(capsys, "depth", "P:3,1", "--char", "4")[0] == 2
    assert run(capsys, "sdepth", "P:3,2", "--module", "pair")[0] == 2
    assert run(capsys, "depth", "P:3,1", "--module", "pair")[0] == 2
    assert run(capsys, "verify-decomp", "--family", "C3quot", "--n", "4")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["replay"])
    assert exc.value.code == 2


def test_verify_decomp(capsys):
    code, out, _ = run(capsys, "verify-decomp", "--family", "C2quot", "--n", "5")
    assert code == 0 and "verified" in out
    code, out, _ = run(capsys, "verify-decomp", "--family", "C3quot", "--n", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data["verified"] and data["min_dimension"] == 3


def test_replay(capsys, tmp_path):
    out_path = tmp_path / "r" / "m1.json"
    code, out, _ = run(capsys, "replay", "--suite", "m1", "--max-vars", "6", "--out", str(out_path))
    assert code == 0 and out.strip().startswith("m1: Pass")
    assert json.loads(out_path.read_text())["suite"] == "m1"
    assert out_path.with_suffix(".csv").exists()
    code, _, err = run(capsys, "replay", "--suite", "stretch")
    assert code == 2 and "refusing" in err
