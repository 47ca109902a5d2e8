"""On-disk result cache: one JSON file per key, written by atomic rename.

Hits are re-checked before use.  Sdepth hits carry their partition witness,
which is re-verified; depth hits carry the top row of the Betti table, whose
entries are recomputed.  A failed re-check drops the entry and warns.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from pathlib import Path
from typing import Optional

from . import ALGORITHM_VERSION
from .bits import indices, mask
from .homology import betti_at, hochster_betti
from .ideals import SquarefreeIdeal
from .stanley.poset import ModuleDescriptor
from .stanley.search import PartitionWitness, SdepthResult, check_witness, sdepth_exact

log = logging.getLogger(__name__)

ENV_VAR = "STRONGDEPTH_CACHE_DIR"


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "strongdepth"


def cache_key(descriptor: ModuleDescriptor, computation: str, char: Optional[int] = None) -> str:
    body = {
        "descriptor": descriptor.to_json(),
        "computation": computation,
        "char": char,
        "algorithm": ALGORITHM_VERSION,
    }
    return hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()


class Cache:
    def __init__(self, root: Optional[Path] = None):
        self.root = Path(root) if root is not None else default_dir()

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def get(self, key: str) -> Optional[dict]:
        try:
            with open(self._path(key)) as fh:
                return json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, json.JSONDecodeError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", key, exc)
            return None

    def put(self, key: str, payload: dict, elapsed: float) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        entry = {"key": key, "timestamp": time.time(), "elapsed": elapsed, "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(entry, fh, sort_keys=True)
        os.replace(tmp, self._path(key))

    def drop(self, key: str) -> None:
        try:
            self._path(key).unlink()
        except FileNotFoundError:
            pass


def cached_pd(ideal: SquarefreeIdeal, p: int, cache: Optional[Cache]) -> tuple[int, bool]:
    """Projective dimension of S/I, and whether it came from the cache."""
    descriptor = ModuleDescriptor("quotient", ideal)
    key = cache_key(descriptor, "pd", p)
    if cache is not None:
        entry = cache.get(key)
        if entry is not None:
            payload = entry["payload"]
            pd = payload["pd"]
            good = bool(payload["top"]) and all(
                betti_at(ideal, mask(e["sigma"]), p).get(pd) == e["rank"] for e in payload["top"]
            )
            if good:
                return pd, True
            log.warning("cache entry %s failed its re-check; recomputing", key)
            cache.drop(key)
    start = time.monotonic()
    table = hochster_betti(ideal, p)
    pd = table.projective_dimension
    if cache is not None:
        top = [{"sigma": indices(s), "rank": r} for _, s, r in table.top_entries()]
        cache.put(key, {"pd": pd, "top": top}, time.monotonic() - start)
    return pd, False


def cached_sdepth(
    descriptor: ModuleDescriptor, budget: Optional[float], cache: Optional[Cache]
) -> tuple[SdepthResult, bool]:
    key = cache_key(descriptor, "sdepth")
    if cache is not None:
        entry = cache.get(key)
        if entry is not None:
            payload = entry["payload"]
            try:
                witness = PartitionWitness.from_json(payload["witness"])
                ok = witness.target == descriptor and check_witness(witness, payload["lower"]) is None
            except (KeyError, ValueError):
                ok = False
            # an inexact entry is only served if no larger budget was asked for
            fresh_enough = payload["exact"] or (budget is not None and budget <= payload.get("budget", 0))
            if ok and fresh_enough:
                res = SdepthResult(payload["lower"], payload["upper"], witness, entry["elapsed"],
                                   payload["budget_hit"], [tuple(p) for p in payload["probes"]])
                return res, True
            if not ok:
                log.warning("cache entry %s failed its re-check; recomputing", key)
                cache.drop(key)
    res = sdepth_exact(descriptor, budget)
    if cache is not None:
        payload = res.to_json()
        payload["budget"] = budget
        cache.put(key, payload, res.elapsed)
    return res, False
