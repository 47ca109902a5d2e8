"""Squarefree monomial ideals over supports (int bitmasks).

Only squarefree ideals exist here.  The unit ideal is not representable:
operations that would produce it raise :class:`UnitIdealError`.  The zero ideal
(no generators) is a legal value.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Optional

from .bits import indices, mask, support_key
from .graphs import FamilySpec, Graph, VarIndexer, build_family


class UnitIdealError(ValueError):
    pass


class ZeroIdealError(ValueError):
    pass


def minimalize(gens: Iterable[int]) -> list[int]:
    """Drop every support that contains another; return them in normal order."""
    out: list[int] = []
    for g in sorted(set(gens), key=support_key):
        if not any(h & g == h for h in out):
            out.append(g)
    return out


@dataclass(frozen=True)
class SquarefreeIdeal:
    ambient: int
    gens: tuple[int, ...]

    def __post_init__(self):
        full = (1 << self.ambient) - 1
        for g in self.gens:
            if g == 0:
                raise UnitIdealError("the unit ideal is not representable")
            if g & ~full:
                raise ValueError(f"generator {indices(g)} outside ambient {self.ambient}")
        if list(self.gens) != minimalize(self.gens):
            raise ValueError("generators must be a minimal antichain in normal order")

    @classmethod
    def from_supports(cls, ambient: int, gens: Iterable[int]) -> SquarefreeIdeal:
        return cls(ambient, tuple(minimalize(gens)))

    @classmethod
    def from_indices(cls, ambient: int, gens: Iterable[Iterable[int]]) -> SquarefreeIdeal:
        return cls.from_supports(ambient, (mask(g) for g in gens))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def full(self) -> int:
        return (1 << self.ambient) - 1

    def support(self) -> int:
        """Union of the generator supports."""
        out = 0
        for g in self.gens:
            out |= g
        return out

    def __contains__(self, support: int) -> bool:
        return contains(self, support)

    def to_json(self, indexer: Optional[VarIndexer] = None) -> dict:
        data = {
            "ambient": self.ambient,
            "generators": [indices(g) for g in self.gens],
        }
        if indexer is not None:
            data["labels"] = {str(k): list(indexer.coord(k)) for k in range(self.ambient)}
        return data

    @classmethod
    def from_json(cls, data: dict) -> SquarefreeIdeal:
        return cls.from_indices(data["ambient"], data["generators"])

    def dumps(self, indexer: Optional[VarIndexer] = None) -> str:
        return json.dumps(self.to_json(indexer), sort_keys=True)

    def pretty(self, indexer: Optional[VarIndexer] = None) -> str:
        def name(k):
            return indexer.label(k) if indexer is not None else f"v{k}"

        return "(" + ", ".join("".join(name(k) for k in indices(g)) for g in self.gens) + ")"


def contains(ideal: SquarefreeIdeal, support: int) -> bool:
    """True iff the squarefree monomial with this support lies in the ideal."""
    return any(g & support == g for g in ideal.gens)


def edge_ideal(g: Graph) -> SquarefreeIdeal:
    if not g.edges:
        raise ZeroIdealError("edge ideal of an edgeless graph is the zero ideal")
    return SquarefreeIdeal.from_supports(g.vertex_count, ((1 << a) | (1 << b) for a, b in g.edges))


def family_ideal(spec: FamilySpec) -> SquarefreeIdeal:
    return edge_ideal(build_family(spec).graph)


def generators_formula(spec: FamilySpec) -> SquarefreeIdeal:
    """Edge-ideal generators of P_{n,m} / C_{n,m} written out from the grid pattern."""
    if spec.family not in ("P", "C"):
        raise ValueError(f"no generator formula for family {spec.family}")
    n, m = spec.n, spec.m
    ix = VarIndexer.grid(n, m)

    def mono(a, b):
        return (1 << ix.flat(*a)) | (1 << ix.flat(*b))

    gens = []
    for i in range(1, n):
        for j in range(1, m):
            gens += [
                mono((i, j), (i, j + 1)),
                mono((i, j), (i + 1, j + 1)),
                mono((i, j), (i + 1, j)),
                mono((i + 1, j), (i, j + 1)),
            ]
        gens.append(mono((i, m), (i + 1, m)))
    # last-column vertical edges; listed once here so n = 1 is covered too
    for j in range(1, m):
        gens.append(mono((n, j), (n, j + 1)))
    if spec.family == "C":
        for j in range(1, m):
            gens += [
                mono((1, j), (n, j + 1)),
                mono((1, j), (n, j)),
                mono((1, j + 1), (n, j)),
            ]
        gens.append(mono((1, m), (n, m)))
    return SquarefreeIdeal.from_supports(n * m, gens)


def colon(ideal: SquarefreeIdeal, u: int) -> SquarefreeIdeal:
    """(I : x_u) for a squarefree monomial x_u outside I."""
    if contains(ideal, u):
        raise UnitIdealError(f"monomial {indices(u)} lies in the ideal; the colon is the unit ideal")
    return SquarefreeIdeal.from_supports(ideal.ambient, (g & ~u for g in ideal.gens))


def add(ideal: SquarefreeIdeal, u: int) -> SquarefreeIdeal:
    return SquarefreeIdeal.from_supports(ideal.ambient, list(ideal.gens) + [u])


def add_all(ideal: SquarefreeIdeal, us: Iterable[int]) -> SquarefreeIdeal:
    return SquarefreeIdeal.from_supports(ideal.ambient, list(ideal.gens) + list(us))


def restrict(ideal: SquarefreeIdeal, variables: int) -> SquarefreeIdeal:
    """I ∩ K[variables], kept in the original ambient ring."""
    return SquarefreeIdeal(ideal.ambient, tuple(g for g in ideal.gens if g & ~variables == 0))


def split_by_variable(ideal: SquarefreeIdeal, v: int) -> tuple[SquarefreeIdeal, SquarefreeIdeal]:
    """The v-free part and the colon by x_v: I = (I ∩ K[x ≠ v]) ⊕ x_v (I : x_v)."""
    bit = 1 << v
    if contains(ideal, bit):
        raise UnitIdealError(f"variable {v} lies in the ideal")
    return restrict(ideal, ideal.full & ~bit), colon(ideal, bit)


def relabel(ideal: SquarefreeIdeal, perm: Sequence[int]) -> SquarefreeIdeal:
    """Send variable ``k`` to ``perm[k]``."""
    if sorted(perm) != list(range(ideal.ambient)):
        raise ValueError("perm must be a bijection on the ambient variable indices")
    return SquarefreeIdeal.from_supports(
        ideal.ambient, (mask(perm[k] for k in indices(g)) for g in ideal.gens)
    )


def compress(ideal: SquarefreeIdeal, variables: Sequence[int]) -> SquarefreeIdeal:
    """Rewrite an ideal whose generators live on ``variables`` in the ring K[variables].

    Variable ``variables[k]`` becomes index ``k``.
    """
    where = {v: k for k, v in enumerate(variables)}
    gens = []
    for g in ideal.gens:
        idx = indices(g)
        if any(v not in where for v in idx):
            raise ValueError(f"generator {idx} is not supported on the given variables")
        gens.append(mask(where[v] for v in idx))
    return SquarefreeIdeal.from_supports(len(variables), gens)


def extend(ideal: SquarefreeIdeal, extra: int) -> SquarefreeIdeal:
    """The same generators in a ring with ``extra`` additional free variables."""
    return SquarefreeIdeal(ideal.ambient + extra, ideal.gens)


def layer_vars(n: int) -> tuple[list[int], list[int], list[int]]:
    """Flat indices of x_1..x_n, y_1..y_n, z_1..z_n in S_{n,3} (1-based lists, slot 0 unused)."""
    x = [-1] + list(range(n))
    y = [-1] + list(range(n, 2 * n))
    z = [-1] + list(range(2 * n, 3 * n))
    return x, y, z


def build_L(n: int, l: int) -> SquarefreeIdeal:
    """L_l = I(P'_{l-1}) + I(P''_{l-1}) + J_l in S_{n,3}, for 3 <= l <= n - 2."""
    if not 3 <= l <= n - 2:
        raise ValueError(f"need 3 <= l <= n - 2, got n={n}, l={l}")
    x, y, z = layer_vars(n)
    a = n - l
    j_gens = [x[a], z[a], x[a + 1], y[a - 1], z[a + 1], x[a - 1], z[a - 1]]
    gens = [1 << v for v in j_gens]
    for i in range(a + 2, n):
        gens.append((1 << x[i]) | (1 << x[i + 1]))
        gens.append((1 << z[i]) | (1 << z[i + 1]))
    return SquarefreeIdeal.from_supports(3 * n, gens)


def L_variables(n: int, l: int) -> list[int]:
    """D_l ∪ D'_l ∪ D''_l in increasing flat order."""
    x, y, z = layer_vars(n)
    a = n - l
    d = [x[i] for i in range(a + 2, n + 1)]
    d1 = [z[i] for i in range(a + 2, n + 1)]
    d2 = [x[a], z[a], x[a + 1], y[a - 1], z[a + 1], x[a - 1], z[a - 1]]
    return sorted(set(d + d1 + d2))
