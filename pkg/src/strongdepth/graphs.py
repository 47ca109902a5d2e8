"""Paths, cycles, strong products and the grid families built from them.

Vertices of a grid family are the pairs ``(i, j)`` with ``1 <= i <= n`` along the
path/cycle factor and ``1 <= j <= m`` along the layer factor.  Flat variable
indices are layer-major, ``(j - 1) * n + (i - 1)``, so for ``m <= 3`` the layers
are the contiguous blocks ``x_1..x_n``, ``y_1..y_n``, ``z_1..z_n``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .bits import indices

FAMILIES = ("P", "C", "Pstar", "Pstarstar", "Cdiamond")
LAYER_LETTERS = "xyz"


class InvalidShape(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[int, ...]

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise ValueError("adjacency length must equal vertex count")
        for v, nbrs in enumerate(self.adjacency):
            if nbrs >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if nbrs >> self.vertex_count:
                raise ValueError(f"neighbor index out of range at vertex {v}")
            for u in indices(nbrs):
                if not self.adjacency[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, vertex_count: int, edges) -> Graph:
        adj = [0] * vertex_count
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(vertex_count, tuple(adj))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (v, u)
            for v, nbrs in enumerate(self.adjacency)
            for u in indices(nbrs)
            if v < u
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def induced(self, keep: list[int]) -> Graph:
        """Subgraph on ``keep``, renumbered in the given order."""
        where = {v: k for k, v in enumerate(keep)}
        edges = [(where[a], where[b]) for a, b in self.edges if a in where and b in where]
        return Graph.from_edges(len(keep), edges)


def build_path(n: int) -> Graph:
    if n < 1:
        raise InvalidShape(f"a path needs at least one vertex, got n={n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def build_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidShape(f"a cycle needs at least three vertices, got n={n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def strong_product(g1: Graph, g2: Graph) -> Graph:
    """Strong product; vertex ``(v, u)`` gets index ``u * |g1| + v``."""
    if g1.vertex_count == 0 or g2.vertex_count == 0:
        raise ValueError("strong product of an empty graph")
    n1 = g1.vertex_count
    edges = set()
    for u1 in range(g2.vertex_count):
        for v1 in range(n1):
            a = u1 * n1 + v1
            for u2 in range(g2.vertex_count):
                same_u = u1 == u2
                adj_u = bool(g2.adjacency[u1] >> u2 & 1)
                if not (same_u or adj_u):
                    continue
                for v2 in range(n1):
                    same_v = v1 == v2
                    adj_v = bool(g1.adjacency[v1] >> v2 & 1)
                    if (adj_v and same_u) or (same_v and adj_u) or (adj_v and adj_u):
                        b = u2 * n1 + v2
                        edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(n1 * g2.vertex_count, sorted(edges))


def diameter(g: Graph) -> float:
    """Largest BFS distance; ``math.inf`` when the graph is disconnected."""
    best = 0
    for source in range(g.vertex_count):
        dist = [-1] * g.vertex_count
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for u in indices(g.adjacency[v]):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        if min(dist) < 0:
            return math.inf
        best = max(best, max(dist))
    return best


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    m: int = 3

    def __post_init__(self):
        n, m = self.n, self.m
        if self.family not in FAMILIES:
            raise InvalidShape(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if n < 1 or m < 1:
            raise InvalidShape(f"n and m must be positive, got n={n}, m={m}")
        if self.family == "P" and n * m < 2:
            raise InvalidShape("P:1,1 is the trivial one-vertex graph and is excluded")
        if self.family == "C" and n < 3:
            raise InvalidShape(f"C families need n >= 3, got n={n}")
        if self.family in ("Pstar", "Pstarstar") and (m != 3 or n < 2):
            raise InvalidShape(f"{self.family} needs m = 3 and n >= 2, got n={n}, m={m}")
        if self.family == "Cdiamond" and (m != 3 or n < 6):
            raise InvalidShape(f"Cdiamond needs m = 3 and n >= 6, got n={n}, m={m}")

    def __str__(self) -> str:
        if self.family in ("P", "C"):
            return f"{self.family}:{self.n},{self.m}"
        return f"{self.family}:{self.n}"


_DSL = re.compile(r"^\s*([A-Za-z]+)\s*:\s*(\d+)\s*(?:,\s*(\d+)\s*)?$")


def parse_family(text: str) -> FamilySpec:
    """Parse ``FAMILY ":" INT ["," INT]``, e.g. ``P:6,4`` or ``Pstar:5``."""
    match = _DSL.match(text)
    if not match:
        raise InvalidShape(f"cannot parse family {text!r}; expected e.g. 'P:6,4' or 'Pstar:5'")
    family, n, m = match.group(1), int(match.group(2)), match.group(3)
    if family in ("P", "C"):
        if m is None:
            raise InvalidShape(f"{family} needs two sizes, e.g. '{family}:{n},2'")
        return FamilySpec(family, n, int(m))
    if m is not None and int(m) != 3:
        raise InvalidShape(f"{family} takes a single size n (m is fixed at 3)")
    return FamilySpec(family, n, 3)


@dataclass(frozen=True)
class VarIndexer:
    """Bijection between flat variable indices and grid coordinates ``(i, j)``."""

    n: int
    m: int
    coords: tuple[tuple[int, int], ...]

    @classmethod
    def grid(cls, n: int, m: int) -> VarIndexer:
        return cls(n, m, tuple((i, j) for j in range(1, m + 1) for i in range(1, n + 1)))

    @cached_property
    def _flat(self) -> dict[tuple[int, int], int]:
        return {c: k for k, c in enumerate(self.coords)}

    @property
    def size(self) -> int:
        return len(self.coords)

    def flat(self, i: int, j: int) -> int:
        try:
            return self._flat[(i, j)]
        except KeyError:
            raise KeyError(f"no variable at ({i}, {j})") from None

    def coord(self, k: int) -> tuple[int, int]:
        return self.coords[k]

    def var(self, name: str) -> int:
        """Flat index of a variable named like ``x3``, ``z7`` or ``x2,4``."""
        if "," in name:
            i, j = name[1:].split(",")
            return self.flat(int(i), int(j))
        return self.flat(int(name[1:]), LAYER_LETTERS.index(name[0]) + 1)

    def label(self, k: int) -> str:
        i, j = self.coords[k]
        if self.m <= 3:
            return f"{LAYER_LETTERS[j - 1]}{i}"
        return f"x{i},{j}"

    def labels(self) -> list[str]:
        return [self.label(k) for k in range(self.size)]


@dataclass(frozen=True)
class FamilyGraph:
    spec: FamilySpec
    graph: Graph
    indexer: VarIndexer


def build_family(spec: FamilySpec) -> FamilyGraph:
    n, m = spec.n, spec.m
    if spec.family == "P":
        return FamilyGraph(spec, strong_product(build_path(n), build_path(m)), VarIndexer.grid(n, m))
    if spec.family == "C":
        return FamilyGraph(spec, strong_product(build_cycle(n), build_path(m)), VarIndexer.grid(n, m))

    base = strong_product(build_path(n), build_path(3))
    grid = VarIndexer.grid(n, 3)
    if spec.family in ("Pstar", "Pstarstar"):
        coords = list(grid.coords) + [(n + 1, 3)]
        edges = list(base.edges)
        z_end = len(coords) - 1
        edges += [(grid.flat(n, 3), z_end), (grid.flat(n, 2), z_end)]
        if spec.family == "Pstarstar":
            coords.append((n + 2, 3))
            z_start = len(coords) - 1
            edges += [(grid.flat(1, 3), z_start), (grid.flat(1, 2), z_start)]
        return FamilyGraph(spec, Graph.from_edges(len(coords), edges), VarIndexer(n, 3, tuple(coords)))

    # Cdiamond: delete x, y in columns 1, 2, n-1, n together with incident edges
    full = strong_product(build_cycle(n), build_path(3))
    removed = {grid.flat(i, j) for i in (1, 2, n - 1, n) for j in (1, 2)}
    keep = [k for k in range(3 * n) if k not in removed]
    coords = tuple(grid.coords[k] for k in keep)
    return FamilyGraph(spec, full.induced(keep), VarIndexer(n, 3, coords))
