"""Depth of squarefree quotients through multigraded Betti numbers.

Hochster's formula gives ``beta_{i,sigma}(S/I) = dim H~_{|sigma|-i-1}(Delta_sigma)``
where ``Delta_sigma`` is the Stanley-Reisner complex of ``I`` restricted to
``sigma``.  The projective dimension is the largest ``i`` with a nonzero entry and
depth follows from Auslander-Buchsbaum.  Coefficients live in GF(p).
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .bits import indices, popcount, support_key
from .ideals import SquarefreeIdeal, ZeroIdealError

DEFAULT_PRIME = 2
SECOND_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not _is_prime(p):
        raise ValueError(f"field characteristic must be prime, got {p}")
    return p


def rank_gf2(rows: Iterable[int]) -> int:
    """Rank of 0/1 rows packed into ints."""
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            pivot = basis.get(top)
            if pivot is None:
                basis[top] = row
                break
            row ^= pivot
    return len(basis)


def rank_mod_p(rows: Iterable[dict[int, int]], p: int) -> int:
    """Rank of sparse rows ``{column: value}`` over GF(p)."""
    basis: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            top = max(row)
            pivot = basis.get(top)
            if pivot is None:
                inv = pow(row[top], p - 2, p)
                basis[top] = {c: v * inv % p for c, v in row.items()}
                break
            factor = row[top]
            for c, v in pivot.items():
                nv = (row.get(c, 0) - factor * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(basis)


def _boundary_rank(upper: Sequence[int], lower_index: dict[int, int], p: int) -> int:
    """Rank of the boundary map from the faces ``upper`` to the faces in ``lower_index``."""
    if not upper or not lower_index:
        return 0
    if p == 2:
        rows = []
        for face in upper:
            row = 0
            f = face
            while f:
                low = f & -f
                row |= 1 << lower_index[face ^ low]
                f ^= low
            rows.append(row)
        return rank_gf2(rows)
    rows = []
    for face in upper:
        row = {}
        for pos, v in enumerate(indices(face)):
            row[lower_index[face & ~(1 << v)]] = 1 if pos % 2 == 0 else p - 1
        rows.append(row)
    return rank_mod_p(rows, p)


def reduced_homology_dims(faces: Iterable[int], p: int = DEFAULT_PRIME) -> dict[int, int]:
    """Reduced homology ranks ``{k: dim H~_k}`` for k = -1 .. top dimension.

    ``faces`` must be down-closed.  The irrelevant complex ``{∅}`` has
    ``H~_{-1}`` of rank one; the void complex (no faces at all) gives ``{}``.
    """
    face_set = set(faces)
    if not face_set:
        return {}
    if 0 not in face_set:
        raise ValueError("face list is not down-closed: the empty face is missing")
    by_dim: dict[int, list[int]] = {}
    for f in face_set:
        f_rest = f
        while f_rest:
            low = f_rest & -f_rest
            if f ^ low not in face_set:
                raise ValueError(f"face list is not down-closed at {indices(f)}")
            f_rest ^= low
        by_dim.setdefault(popcount(f) - 1, []).append(f)
    top = max(by_dim)
    index = {k: {f: i for i, f in enumerate(sorted(fs))} for k, fs in by_dim.items()}
    ranks = {}
    for k in range(0, top + 1):
        ranks[k] = _boundary_rank(by_dim[k], index[k - 1], p)
    out = {}
    for k in range(-1, top + 1):
        count = len(by_dim.get(k, ()))
        out[k] = count - ranks.get(k, 0) - ranks.get(k + 1, 0)
    return out


def independent_faces(ideal: SquarefreeIdeal, within: int | None = None) -> list[int]:
    """All supports inside ``within`` that avoid every generator (the Stanley-Reisner faces)."""
    if within is None:
        within = ideal.full
    verts = indices(within)
    gens = [g for g in ideal.gens if g & within == g]
    containing = {v: [g for g in gens if g >> v & 1] for v in verts}
    out = []

    def grow(face: int, start: int):
        out.append(face)
        for pos in range(start, len(verts)):
            v = verts[pos]
            new = face | (1 << v)
            if all(g & new != g for g in containing[v]):
                grow(new, pos + 1)

    grow(0, 0)
    return out


@dataclass
class BettiTable:
    ambient: int
    p: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def depth(self) -> int:
        return self.ambient - self.projective_dimension

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _), r in self.entries.items():
            out[i] = out.get(i, 0) + r
        return dict(sorted(out.items()))

    def top_entries(self) -> list[tuple[int, int, int]]:
        pd = self.projective_dimension
        return [(i, s, r) for (i, s), r in self._sorted() if i == pd]

    def _sorted(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0], support_key(kv[0][1])))

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "char": self.p,
            "entries": [{"i": i, "sigma": indices(s), "rank": r} for (i, s), r in self._sorted()],
        }

    @classmethod
    def from_json(cls, data: dict) -> BettiTable:
        entries = {}
        for e in data["entries"]:
            s = 0
            for v in e["sigma"]:
                s |= 1 << v
            entries[(e["i"], s)] = e["rank"]
        return cls(data["ambient"], data["char"], entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _sigma_betti(ideal: SquarefreeIdeal, faces: list[int], sigma: int, p: int, prune: bool):
    if sigma == 0:
        return {0: 1}
    if prune:
        covered = 0
        for g in ideal.gens:
            if g & sigma == g:
                covered |= g
        if sigma & ~covered:
            return {}  # some vertex of sigma is in no generator inside sigma: a cone
    local = [f for f in faces if f & ~sigma == 0]
    size = popcount(sigma)
    return {size - k - 1: r for k, r in reduced_homology_dims(local, p).items() if r}


def hochster_betti(ideal: SquarefreeIdeal, p: int = DEFAULT_PRIME, prune: bool = True) -> BettiTable:
    if ideal.is_zero:
        raise ZeroIdealError("Betti table of S/0 is not computed; depth is the ambient count")
    check_prime(p)
    faces = independent_faces(ideal)
    table = BettiTable(ideal.ambient, p)
    for sigma in sorted(range(1 << ideal.ambient), key=popcount):
        for i, r in _sigma_betti(ideal, faces, sigma, p, prune).items():
            table.entries[(i, sigma)] = r
    return table


def betti_at(ideal: SquarefreeIdeal, sigma: int, p: int = DEFAULT_PRIME) -> dict[int, int]:
    """``{i: beta_{i,sigma}}`` for one multidegree; used to re-check cached tables."""
    return _sigma_betti(ideal, independent_faces(ideal, sigma), sigma, p, prune=False)


def depth_quotient(ideal: SquarefreeIdeal, p: int = DEFAULT_PRIME) -> int:
    if ideal.is_zero:
        return ideal.ambient
    return hochster_betti(ideal, p).depth


def depth_ideal(ideal: SquarefreeIdeal, p: int = DEFAULT_PRIME) -> int:
    if ideal.is_zero:
        raise ZeroIdealError("depth of the zero ideal is undefined")
    return depth_quotient(ideal, p) + 1


@dataclass(frozen=True)
class CharReport:
    depths: dict[int, int]

    @property
    def consistent(self) -> bool:
        return len(set(self.depths.values())) == 1


def char_sensitivity(ideal: SquarefreeIdeal, primes: Sequence[int] = (DEFAULT_PRIME, SECOND_PRIME)) -> CharReport:
    if len(primes) < 2:
        raise ValueError("need at least two primes to compare")
    return CharReport({p: depth_quotient(ideal, check_prime(p)) for p in primes})
