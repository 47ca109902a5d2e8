import json
import logging

from strongdepth.cache import ENV_VAR, Cache, cache_key, cached_pd, cached_sdepth, default_dir
from strongdepth.graphs import FamilySpec
from strongdepth.ideals import family_ideal
from strongdepth.stanley.poset import ideal_module, quotient_module


def test_env_var_sets_location(monkeypatch, tmp_path):
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "here"))
    assert default_dir() == tmp_path / "here"
    assert Cache().root == tmp_path / "here"


def test_key_depends_on_everything():
    ideal = family_ideal(FamilySpec("P", 3, 2))
    keys = {
        cache_key(quotient_module(ideal), "pd", 2),
        cache_key(quotient_module(ideal), "pd", 3),
        cache_key(ideal_module(ideal), "pd", 2),
        cache_key(quotient_module(ideal), "sdepth"),
    }
    assert len(keys) == 4


def test_sdepth_hit_and_repair(tmp_path, caplog):
    cache = Cache(tmp_path)
    desc = quotient_module(family_ideal(FamilySpec("C", 5, 1)))
    first, hit = cached_sdepth(desc, None, cache)
    assert not hit
    again, hit = cached_sdepth(desc, None, cache)
    assert hit and (again.lower, again.upper) == (first.lower, first.upper)
    path = tmp_path / f"{cache_key(desc, 'sdepth')}.json"
    entry = json.loads(path.read_text())
    entry["payload"]["witness"]["intervals"] = entry["payload"]["witness"]["intervals"][1:]
    path.write_text(json.dumps(entry))
    with caplog.at_level(logging.WARNING):
        fixed, hit = cached_sdepth(desc, None, cache)
    assert not hit and fixed.lower == first.lower
    assert "re-check" in caplog.text


def test_inexact_entry_not_served_for_bigger_budget(tmp_path):
    cache = Cache(tmp_path)
    desc = ideal_module(family_ideal(FamilySpec("P", 8, 1)))
    quick, _ = cached_sdepth(desc, 0.0, cache)
    assert not quick.exact
    _, hit = cached_sdepth(desc, 0.0, cache)
    assert hit
    full, hit = cached_sdepth(desc, None, cache)
    assert not hit and full.exact


def test_pd_hit_and_corruption(tmp_path):
    cache = Cache(tmp_path)
    ideal = family_ideal(FamilySpec("P", 4, 2))
    pd, hit = cached_pd(ideal, 2, cache)
    assert not hit
    assert cached_pd(ideal, 2, cache) == (pd, True)
    path = tmp_path / f"{cache_key(quotient_module(ideal), 'pd', 2)}.json"
    entry = json.loads(path.read_text())
    entry["payload"]["pd"] = pd - 1
    path.write_text(json.dumps(entry))
    assert cached_pd(ideal, 2, cache) == (pd, False)
    path.write_text("{not json")
    assert cached_pd(ideal, 2, cache) == (pd, False)
