"""Stanley decompositions and an exact-cover verifier for them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..bits import indices, mask, popcount, support_key
from .poset import ModuleDescriptor
from .search import PartitionWitness, check_witness

MAX_VERIFY_AMBIENT = 24


@dataclass(frozen=True)
class StanleySpace:
    """The K-span of ``x_w * u`` for monomials ``u`` in ``K[free]``."""

    w: int
    free: int

    @property
    def dimension(self) -> int:
        return popcount(self.free)

    def covers(self, exponents) -> bool:
        """Membership of the monomial with this exponent vector."""
        for v, e in enumerate(exponents):
            inw = self.w >> v & 1
            if e < inw:
                return False
            if e - inw > 0 and not self.free >> v & 1:
                return False
        return True


@dataclass(frozen=True)
class StanleyDecomposition:
    spaces: tuple[StanleySpace, ...]
    target: ModuleDescriptor

    @property
    def min_dimension(self) -> int:
        return min(sp.dimension for sp in self.spaces)

    def normalized(self) -> StanleyDecomposition:
        spaces = sorted(self.spaces, key=lambda sp: (support_key(sp.w), support_key(sp.free)))
        return StanleyDecomposition(tuple(spaces), self.target)

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "spaces": [{"w": indices(sp.w), "free": indices(sp.free)} for sp in self.normalized().spaces],
        }

    @classmethod
    def from_json(cls, data: dict) -> StanleyDecomposition:
        spaces = tuple(StanleySpace(mask(s["w"]), mask(s["free"])) for s in data["spaces"])
        return cls(spaces, ModuleDescriptor.from_json(data["target"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def pretty(self, label=None) -> str:
        label = label or (lambda k: f"v{k}")

        def mono(s):
            return "".join(label(k) for k in indices(s)) or "1"

        return " ⊕ ".join(
            f"{mono(sp.w)}K[{','.join(label(k) for k in indices(sp.free))}]" for sp in self.normalized().spaces
        )


class UnverifiedWitness(ValueError):
    pass


def partition_to_decomposition(witness: PartitionWitness) -> StanleyDecomposition:
    """Interval ``[A, B]`` becomes the space ``x_A K[B]``."""
    problem = check_witness(witness)
    if problem:
        raise UnverifiedWitness(problem)
    return StanleyDecomposition(tuple(StanleySpace(iv.lo, iv.hi) for iv in witness.intervals), witness.target)


@dataclass(frozen=True)
class Verification:
    ok: bool
    pattern: Optional[tuple[int, ...]] = None
    count: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def _membership_table(target: ModuleDescriptor) -> np.ndarray:
    universe = np.arange(1 << target.ambient, dtype=np.int64)

    def table(ideal):
        hit = np.zeros(universe.shape, dtype=bool)
        for g in ideal.gens:
            hit |= (universe & g) == g
        return hit

    inner = table(target.inner)
    if target.kind == "ideal":
        return inner
    if target.kind == "quotient":
        return ~inner
    return table(target.outer) & ~inner


def _interval_array(lo: int, free: int) -> np.ndarray:
    out = np.array([lo], dtype=np.int64)
    for v in indices(free):
        out = np.concatenate([out, out | (1 << v)])
    return out


def verify_decomposition(dec: StanleyDecomposition) -> Verification:
    """Check that every monomial of the target is covered exactly once.

    Exponent patterns are taken in {0, 1, 2}^ambient, 2 standing for any
    exponent >= 2.  A space ``x_w K[A]`` meets the patterns of support ``sigma``
    iff ``w ⊆ sigma ⊆ w ∪ A``, and all those spaces share the all-ones pattern on
    ``sigma``; so exactness reduces to: each target support is met by exactly one
    space and that space has ``w ⊆ A``, each other support by none.  The first
    violating pattern (normal order of supports) is returned with its count.
    """
    n = dec.target.ambient
    if n > MAX_VERIFY_AMBIENT:
        raise ValueError(f"ambient {n} too large to verify (limit {MAX_VERIFY_AMBIENT})")
    member = _membership_table(dec.target)
    counts = np.zeros(1 << n, dtype=np.int64)
    owner = np.full(1 << n, -1, dtype=np.int64)
    for si, sp in enumerate(dec.spaces):
        sig = _interval_array(sp.w, sp.free & ~sp.w)
        counts[sig] += 1
        owner[sig] = si
    bad_count = counts != member.astype(np.int64)
    lonely = (counts == 1) & member
    # trailing False absorbs owner == -1
    partial = np.array([sp.w & ~sp.free != 0 for sp in dec.spaces] + [False], dtype=bool)
    bad_shape = lonely & partial[owner]
    bad = np.flatnonzero(bad_count | bad_shape)
    if bad.size == 0:
        return Verification(True)
    sigma = min((int(s) for s in bad), key=support_key)
    if bad_count[sigma]:
        pattern = tuple(1 if sigma >> v & 1 else 0 for v in range(n))
        return Verification(False, pattern, int(counts[sigma]))
    sp = dec.spaces[owner[sigma]]
    pattern = tuple(2 if (sp.w & ~sp.free) >> v & 1 else (1 if sigma >> v & 1 else 0) for v in range(n))
    return Verification(False, pattern, 0)


def shift_decomposition(
    inner: StanleyDecomposition,
    variables: list[int],
    prefix: int,
    adjoin: int,
) -> list[StanleySpace]:
    """Embed spaces of K[variables]/T into a bigger ring, multiply by ``x_prefix``, adjoin ``adjoin``."""

    def lift(s):
        return mask(variables[k] for k in indices(s))

    return [StanleySpace(prefix | lift(sp.w), adjoin | lift(sp.free)) for sp in inner.spaces]
