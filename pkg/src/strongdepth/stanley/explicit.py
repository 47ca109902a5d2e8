"""Explicit Stanley decompositions of I(C_{n,m}) / I(P_{n,m}) for m = 2, 3.

Small n use fixed lists of spaces.  Larger n glue together shifted copies of
decompositions of smaller quotients; those inner decompositions come from the
interval-partition search, so any optimal one is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from ..bits import mask, subsets
from ..graphs import FamilySpec
from ..ideals import SquarefreeIdeal, add_all, compress, family_ideal, layer_vars, restrict
from .decomposition import StanleyDecomposition, StanleySpace, partition_to_decomposition, shift_decomposition
from .poset import ModuleDescriptor, char_poset, pair_module, quotient_module
from .search import sdepth_exact


def cycle_pair(n: int, m: int) -> ModuleDescriptor:
    """The module I(C_{n,m}) / I(P_{n,m})."""
    return pair_module(family_ideal(FamilySpec("C", n, m)), family_ideal(FamilySpec("P", n, m)))


def _space(w, free) -> StanleySpace:
    return StanleySpace(mask(w), mask(free))


def optimal_quotient_decomposition(ideal: SquarefreeIdeal, budget: Optional[float] = None) -> StanleyDecomposition:
    result = sdepth_exact(quotient_module(ideal), budget)
    return partition_to_decomposition(result.witness)


@dataclass(frozen=True)
class Summand:
    """``prefix * (K[inner_vars] / inner_ideal)[adjoin]`` inside the ambient ring."""

    prefix: int
    adjoin: int
    inner_vars: tuple[int, ...]
    inner_ideal: SquarefreeIdeal  # in the ambient ring, supported on inner_vars

    def expand(self, budget: Optional[float] = None) -> list[StanleySpace]:
        inner = optimal_quotient_decomposition(compress(self.inner_ideal, self.inner_vars), budget)
        return shift_decomposition(inner, list(self.inner_vars), self.prefix, self.adjoin)


def paper_decomposition_C2(n: int, budget: Optional[float] = None) -> StanleyDecomposition:
    if n < 3:
        raise ValueError(f"decomposition of I(C_n,2)/I(P_n,2) needs n >= 3, got {n}")
    target = cycle_pair(n, 2)
    x, y, _ = layer_vars(n)
    ends = [(x[1], x[n]), (x[1], y[n]), (y[1], x[n]), (y[1], y[n])]
    if n <= 4:
        spaces = [_space([a, b], [a, b]) for a, b in ends]
    elif n == 5:
        spaces = [_space([a, b], [a, x[3], b]) for a, b in ends]
        spaces += [_space([a, y[3], b], [a, y[3], b]) for a, b in ends]
    else:
        middle = tuple(sorted(x[3 : n - 1] + y[3 : n - 1]))
        t = restrict(target.inner, mask(middle))
        spaces = []
        for a, b in ends:
            pair = mask([a, b])
            spaces += Summand(pair, pair, middle, t).expand(budget)
    return StanleyDecomposition(tuple(spaces), target)


def c3_summands(n: int, complete: bool = True) -> list[Summand]:
    """The pieces of I(C_{n,3}) / I(P_{n,3}) for n >= 6.

    The first seven are the classical ones.  With ``complete`` three more are
    added for the monomials divisible by x_1 z_1 y_n, y_1 x_n z_n or
    x_1 z_1 x_n z_n, which none of the seven reach.
    """
    if n < 6:
        raise ValueError(f"the summand form needs n >= 6, got {n}")
    x, y, z = layer_vars(n)
    p = family_ideal(FamilySpec("P", n, 3))
    r = [v for i in range(3, n - 1) for v in (x[i], y[i], z[i])]
    u = restrict(p, mask(r))

    def piece(prefix, extra_vars=(), extra_gens=()):
        inner_vars = tuple(sorted(r + list(extra_vars)))
        ideal = add_all(u, [mask(g) for g in extra_gens])
        return Summand(mask(prefix), mask(prefix), inner_vars, ideal)

    out = [
        piece([y[1], y[n]]),
        piece([x[1], y[n]], [z[2]], [(y[3], z[2]), (z[2], z[3])]),
        piece([z[1], y[n]], [x[2]], [(y[3], x[2]), (x[2], x[3])]),
        piece([y[1], x[n]], [z[n - 1]], [(y[n - 2], z[n - 1]), (z[n - 2], z[n - 1])]),
        piece([y[1], z[n]], [x[n - 1]], [(y[n - 2], x[n - 1]), (x[n - 2], x[n - 1])]),
    ]
    for a, b in ((x, z), (z, x)):
        out.append(
            piece(
                [a[1], a[n]],
                [b[1], b[2], b[n - 1], b[n]],
                [
                    (y[n - 2], b[n - 1]),
                    (b[n - 2], b[n - 1]),
                    (b[n - 1], b[n]),
                    (b[n], b[1]),
                    (b[1], b[2]),
                    (y[3], b[2]),
                    (b[2], b[3]),
                ],
            )
        )
    if complete:
        out += [
            piece([x[1], z[1], y[n]]),
            piece([y[1], x[n], z[n]]),
            piece([x[1], z[1], x[n], z[n]]),
        ]
    return out


# H from the n = 5 construction, as (w, free) in (letter, column) pairs
_H5 = [
    ("x1 x5", "x1 x3 x5"),
    ("x1 y5", "x1 x3 y5"),
    ("y1 x5", "x3 x5 y1"),
    ("y1 y5", "x3 y1 y5"),
    ("z1 y5", "x3 y5 z1"),
    ("z1 z5", "z1 z3 z5"),
    ("y1 z5", "y1 y3 z5"),
]


def _named(n: int, words: str) -> list[int]:
    layers = dict(zip("xyz", layer_vars(n)))
    return [layers[w[0]][int(w[1:])] for w in words.split()]


def h5_spaces() -> list[StanleySpace]:
    return [_space(_named(5, w), _named(5, f)) for w, f in _H5]


def paper_decomposition_C3(n: int, budget: Optional[float] = None, complete: bool = True) -> StanleyDecomposition:
    if n < 5:
        raise ValueError(f"decomposition of I(C_n,3)/I(P_n,3) needs n >= 5, got {n}")
    target = cycle_pair(n, 3)
    if n == 5:
        spaces = h5_spaces()
        reached = set()
        for sp in spaces:
            for extra in subsets(sp.free & ~sp.w):
                reached.add(sp.w | extra)
        rest = [s for s in char_poset(target).elements() if s not in reached]
        spaces += [StanleySpace(s, s) for s in rest]
    else:
        spaces = []
        for summand in c3_summands(n, complete):
            spaces += summand.expand(budget)
    return StanleyDecomposition(tuple(spaces), target)


def pair_bound(n: int) -> int:
    return math.ceil((n + 2) / 3)


@dataclass(frozen=True)
class OkazakiBound:
    literal: int
    corrected: int


def okazaki_bound(ideal: SquarefreeIdeal) -> OkazakiBound:
    """Both readings of the generator-count bound ``n - floor(m/2)``."""
    if ideal.is_zero:
        raise ValueError("the bound needs a nonzero ideal")
    value = ideal.ambient - len(ideal.gens) // 2
    return OkazakiBound(min(1, value), max(1, value))


__all__ = [
    "OkazakiBound",
    "Summand",
    "c3_summands",
    "cycle_pair",
    "h5_spaces",
    "okazaki_bound",
    "optimal_quotient_decomposition",
    "pair_bound",
    "paper_decomposition_C2",
    "paper_decomposition_C3",
]
