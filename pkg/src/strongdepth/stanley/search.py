"""Interval partitions of characteristic posets and exact Stanley depth.

``sdepth(M) >= k`` iff the poset of ``M`` splits into intervals ``[A, B]`` with
``|B| >= k``.  The search only looks at members of size ``<= k`` and tops of
size exactly ``k``: an interval ``[A, B]`` with ``|B| > k`` restricted to sizes
``<= k`` is a truncated Boolean lattice, which itself splits into intervals with
tops on level ``k``, and members above level ``k`` can always stand alone.  What
remains is an exact cover problem (members below level ``k`` must be covered,
members on level ``k`` may be) solved with Algorithm X and a memo of refuted
states.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Optional

from ..bits import indices, popcount, subsets, support_key
from .poset import CharPoset, ModuleDescriptor, char_poset

YES, NO, TIMEOUT = "yes", "no", "timeout"
MEMO_LIMIT = 2_000_000


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo & ~self.hi:
            raise ValueError(f"interval bottom {indices(self.lo)} is not below top {indices(self.hi)}")

    def members(self):
        free = self.hi & ~self.lo
        for s in subsets(free):
            yield self.lo | s


@dataclass(frozen=True)
class PartitionWitness:
    intervals: tuple[Interval, ...]
    target: ModuleDescriptor

    @property
    def min_top(self) -> int:
        return min(popcount(iv.hi) for iv in self.intervals)

    def to_json(self) -> dict:
        ivs = sorted(self.intervals, key=lambda iv: (support_key(iv.lo), support_key(iv.hi)))
        return {
            "target": self.target.to_json(),
            "intervals": [{"lo": indices(iv.lo), "hi": indices(iv.hi)} for iv in ivs],
        }

    @classmethod
    def from_json(cls, data: dict) -> PartitionWitness:
        from ..bits import mask

        target = ModuleDescriptor.from_json(data["target"])
        ivs = tuple(Interval(mask(iv["lo"]), mask(iv["hi"])) for iv in data["intervals"])
        return cls(ivs, target)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def check_witness(witness: PartitionWitness, k: Optional[int] = None) -> Optional[str]:
    """Independent re-check: disjoint intervals covering exactly the poset.

    Returns ``None`` when sound, otherwise a description of the first problem.
    Every support of the ambient ring is visited when it has at most 16
    variables; larger rings are checked against the enumerated poset.
    """
    target = witness.target
    seen: dict[int, int] = {}
    for n_iv, iv in enumerate(witness.intervals):
        if k is not None and popcount(iv.hi) < k:
            return f"interval {n_iv} has top of size {popcount(iv.hi)} < {k}"
        for s in iv.members():
            if not target.member(s):
                return f"interval {n_iv} contains non-member {indices(s)}"
            if s in seen:
                return f"support {indices(s)} covered by intervals {seen[s]} and {n_iv}"
            seen[s] = n_iv
    if target.ambient <= 16:
        universe = range(1 << target.ambient)
        missing = next((s for s in universe if target.member(s) and s not in seen), None)
    else:
        missing = next((s for s in char_poset(target).elements() if s not in seen), None)
    if missing is not None:
        return f"member {indices(missing)} is not covered"
    return None


@dataclass
class Decision:
    status: str
    witness: Optional[PartitionWitness] = None
    nodes: int = 0


def level_counts_feasible(counts: list[int], k: int) -> bool:
    """Necessary condition: the number of intervals with bottom on each level is nonnegative."""
    bottoms = []
    for j in range(k + 1):
        b = counts[j] - sum(bottoms[i] * math.comb(k - i, j - i) for i in range(j))
        if b < 0:
            return False
        bottoms.append(b)
    return True


def decide_partition(poset: CharPoset, k: int, budget: Optional[float] = None) -> Decision:
    """Is there an interval partition of ``poset`` with every top of size >= k?"""
    if not 0 <= k <= poset.ambient:
        raise ValueError(f"k must lie in [0, {poset.ambient}], got {k}")
    deadline = None if budget is None else time.monotonic() + budget
    low = poset.elements(max_size=k)
    counts = [0] * (k + 1)
    for s in low:
        counts[popcount(s)] += 1
    if not level_counts_feasible(counts, k):
        return Decision(NO)

    where = {s: i for i, s in enumerate(low)}
    primary = [i for i, s in enumerate(low) if popcount(s) < k]
    tops = [s for s in low if popcount(s) == k]

    # rows: intervals [A, B] with |B| = k and |A| < k
    row_cols: list[list[int]] = []
    row_iv: list[Interval] = []
    for b in tops:
        for a in subsets(b):
            if a == b or a not in where:
                continue
            iv = Interval(a, b)
            row_cols.append([where[s] for s in iv.members()])
            row_iv.append(iv)

    cols: dict[int, set[int]] = {i: set() for i in range(len(low))}
    for r, cs in enumerate(row_cols):
        for c in cs:
            cols[c].add(r)
    row_mask = [sum(1 << c for c in cs) for cs in row_cols]

    if deadline is not None and time.monotonic() > deadline:
        return Decision(TIMEOUT)
    left = set(primary)
    order = {c: c for c in primary}

    def select(r):
        removed = []
        for j in row_cols[r]:
            for i in cols[j]:
                for jj in row_cols[i]:
                    if jj != j:
                        cols[jj].discard(i)
            removed.append(cols.pop(j))
            left.discard(j)
        return removed

    def deselect(r, removed):
        for j in reversed(row_cols[r]):
            cols[j] = removed.pop()
            if j in order:
                left.add(j)
            for i in cols[j]:
                for jj in row_cols[i]:
                    if jj != j:
                        cols[jj].add(i)

    def choose():
        return min(left, key=lambda c: (len(cols[c]), c))

    failed: set[int] = set()
    nodes = 0
    covered = 0
    stack: list[list] = []

    def finish():
        chosen = [row_iv[f[2]] for f in stack]
        used = set()
        for iv in chosen:
            used.update(iv.members())
        singles = [Interval(s, s) for s in tops if s not in used]
        above = [Interval(s, s) for s in poset.elements(min_size=k + 1)]
        return Decision(YES, PartitionWitness(tuple(chosen + singles + above), poset.descriptor), nodes)

    if not left:
        return finish()
    c = choose()
    if not cols[c]:
        return Decision(NO, nodes=nodes)
    stack.append([sorted(cols[c]), 0, None, None])
    while stack:
        frame = stack[-1]
        if frame[2] is not None:
            deselect(frame[2], frame[3])
            covered ^= row_mask[frame[2]]
            frame[2] = frame[3] = None
        if frame[1] == len(frame[0]):
            if len(failed) < MEMO_LIMIT:
                failed.add(covered)
            stack.pop()
            continue
        r = frame[0][frame[1]]
        frame[1] += 1
        frame[3] = select(r)
        frame[2] = r
        covered ^= row_mask[r]
        nodes += 1
        if deadline is not None and time.monotonic() > deadline:
            return Decision(TIMEOUT, nodes=nodes)
        if not left:
            return finish()
        if covered in failed:
            continue
        c = choose()
        if not cols[c]:
            continue
        stack.append([sorted(cols[c]), 0, None, None])
    return Decision(NO, nodes=nodes)


@dataclass
class SdepthResult:
    lower: int
    upper: int
    witness: Optional[PartitionWitness]
    elapsed: float
    budget_hit: bool
    probes: list[tuple[int, str]] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"sdepth only bracketed in [{self.lower}, {self.upper}]")
        return self.lower

    def to_json(self, with_witness: bool = True) -> dict:
        data = {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "budget_hit": self.budget_hit,
            "probes": [list(p) for p in self.probes],
        }
        if with_witness and self.witness is not None:
            data["witness"] = self.witness.to_json()
        return data


def trivial_upper(poset: CharPoset) -> int:
    """Every maximal member must be the top of its own interval."""
    return min(popcount(s) for s in poset.maximal_elements())


def singleton_witness(poset: CharPoset) -> PartitionWitness:
    return PartitionWitness(tuple(Interval(s, s) for s in poset.elements()), poset.descriptor)


def sdepth_exact(
    descriptor: ModuleDescriptor,
    budget: Optional[float] = None,
    lower: Optional[PartitionWitness] = None,
    upper: Optional[int] = None,
    first_probe: Optional[int] = None,
) -> SdepthResult:
    """Binary search on ``k`` over :func:`decide_partition`.

    ``budget`` is wall-clock seconds for the whole search; a probe that still has
    other candidates left gets at most half of what remains, so one hard probe
    cannot starve the rest.  ``lower`` may seed the search with a known witness,
    ``upper`` with a known bound, and ``first_probe`` picks the first ``k`` tried.
    """
    start = time.monotonic()
    poset = char_poset(descriptor)
    if lower is not None:
        problem = check_witness(lower)
        if problem:
            raise ValueError(f"seed witness rejected: {problem}")
        lo, witness = lower.min_top, lower
    else:
        lo, witness = 0, None
    hi = trivial_upper(poset)
    if upper is not None:
        hi = min(hi, upper)
    cap = hi
    budget_hit = False
    probes = []
    while lo < cap:
        k = (lo + cap + 1) // 2
        if first_probe is not None and not probes and lo < first_probe <= cap:
            k = first_probe
        remaining = None if budget is None else budget - (time.monotonic() - start)
        if remaining is not None and remaining <= 0:
            budget_hit = True
            break
        if remaining is not None and cap - lo > 1:
            remaining /= 2
        decision = decide_partition(poset, k, remaining)
        probes.append((k, decision.status))
        if decision.status == YES:
            lo, witness = k, decision.witness
        elif decision.status == NO:
            hi = cap = k - 1
        else:
            budget_hit = True
            cap = k - 1
    if witness is None:
        witness = singleton_witness(poset) if lo == 0 else witness
    return SdepthResult(lo, hi, witness, time.monotonic() - start, budget_hit, probes)


def sdepth_at_least(descriptor: ModuleDescriptor, k: int, budget: Optional[float] = None) -> Decision:
    return decide_partition(char_poset(descriptor), k, budget)
