"""Squarefree supports as Python ints: bit ``i`` set means variable ``i`` divides."""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def indices(support: int) -> list[int]:
    out = []
    i = 0
    while support:
        if support & 1:
            out.append(i)
        support >>= 1
        i += 1
    return out


def popcount(support: int) -> int:
    return bin(support).count("1")


def subsets(support: int) -> Iterator[int]:
    """All subsets of ``support``, starting from the empty set."""
    sub = 0
    while True:
        yield sub
        if sub == support:
            return
        sub = (sub - support) & support


def support_key(support: int) -> tuple[int, tuple[int, ...]]:
    """Normal order: cardinality first, then lex on sorted flat indices."""
    idx = tuple(indices(support))
    return (len(idx), idx)
