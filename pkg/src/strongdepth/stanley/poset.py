"""Module descriptors and their characteristic posets (squarefree case)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional

from ..bits import mask, popcount, support_key
from ..homology import independent_faces
from ..ideals import SquarefreeIdeal, ZeroIdealError, contains

KINDS = ("ideal", "quotient", "pair")


@dataclass(frozen=True)
class ModuleDescriptor:
    """Ideal ``I``, quotient ``S/I``, or pair ``J/I`` with ``I ⊆ J`` (``outer`` is ``J``)."""

    kind: str
    inner: SquarefreeIdeal
    outer: Optional[SquarefreeIdeal] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown module kind {self.kind!r}")
        if self.kind == "pair":
            outer = self.outer
            if outer is None:
                raise ValueError("a pair module needs an outer ideal")
            if outer.ambient != self.inner.ambient:
                raise ValueError("inner and outer ideals must share one ambient ring")
            if not all(contains(outer, g) for g in self.inner.gens):
                raise ValueError("inner ideal is not contained in the outer ideal")
            if outer.gens == self.inner.gens:
                raise ValueError("pair module J/I needs I != J")
        elif self.outer is not None:
            raise ValueError(f"{self.kind} modules take a single ideal")
        if self.kind == "ideal" and self.inner.is_zero:
            raise ZeroIdealError("the zero ideal has an empty characteristic poset")

    @property
    def ambient(self) -> int:
        return self.inner.ambient

    def member(self, support: int) -> bool:
        if self.kind == "ideal":
            return contains(self.inner, support)
        if self.kind == "quotient":
            return not contains(self.inner, support)
        return contains(self.outer, support) and not contains(self.inner, support)

    def to_json(self) -> dict:
        data = {"kind": self.kind, "inner": self.inner.to_json()}
        if self.outer is not None:
            data["outer"] = self.outer.to_json()
        return data

    @classmethod
    def from_json(cls, data: dict) -> ModuleDescriptor:
        outer = data.get("outer")
        return cls(
            data["kind"],
            SquarefreeIdeal.from_json(data["inner"]),
            SquarefreeIdeal.from_json(outer) if outer is not None else None,
        )


def ideal_module(ideal: SquarefreeIdeal) -> ModuleDescriptor:
    return ModuleDescriptor("ideal", ideal)


def quotient_module(ideal: SquarefreeIdeal) -> ModuleDescriptor:
    return ModuleDescriptor("quotient", ideal)


def pair_module(outer: SquarefreeIdeal, inner: SquarefreeIdeal) -> ModuleDescriptor:
    """The module ``outer / inner``."""
    return ModuleDescriptor("pair", inner, outer)


class CharPoset:
    """Supports ``sigma`` with ``x_sigma`` in the module, i.e. the squarefree basis.

    Ideal posets are up-closed, quotient posets down-closed, and pair posets are
    an up-set minus an up-set; in all three cases ``[A, B]`` lies in the poset as
    soon as both ends do.
    """

    def __init__(self, descriptor: ModuleDescriptor):
        self.descriptor = descriptor
        self.ambient = descriptor.ambient
        self.member = descriptor.member

    @cached_property
    def _faces(self) -> list[int]:
        return independent_faces(self.descriptor.inner)

    @cached_property
    def _face_set(self) -> frozenset[int]:
        return frozenset(self._faces)

    def elements(self, max_size: Optional[int] = None, min_size: int = 0) -> list[int]:
        """Members with ``min_size <= |sigma| <= max_size``, in normal order."""
        top = self.ambient if max_size is None else min(max_size, self.ambient)
        kind = self.descriptor.kind
        if kind == "ideal":
            faces = self._face_set
            out = []
            for size in range(max(min_size, 0), top + 1):
                for combo in combinations(range(self.ambient), size):
                    s = mask(combo)
                    if s not in faces:
                        out.append(s)
            return out
        out = [f for f in self._faces if min_size <= popcount(f) <= top]
        if kind == "pair":
            outer = self.descriptor.outer
            out = [f for f in out if contains(outer, f)]
        out.sort(key=support_key)
        return out

    def maximal_elements(self) -> list[int]:
        if self.descriptor.kind == "ideal":
            return [(1 << self.ambient) - 1]
        out = []
        for s in self.elements():
            if not any(self.member(s | (1 << v)) for v in range(self.ambient) if not s >> v & 1):
                out.append(s)
        return out

    def size(self) -> int:
        if self.descriptor.kind == "ideal":
            return (1 << self.ambient) - len(self._faces)
        return len(self.elements())


def char_poset(descriptor: ModuleDescriptor) -> CharPoset:
    return CharPoset(descriptor)
