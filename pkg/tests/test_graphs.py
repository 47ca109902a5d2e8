import math

import pytest

from oracles import bfs_diameter, grid_edges
from strongdepth.graphs import (
    FamilySpec,
    Graph,
    InvalidShape,
    VarIndexer,
    build_cycle,
    build_family,
    build_path,
    diameter,
    parse_family,
    strong_product,
)


def test_path_and_cycle_basics():
    assert build_path(1).edge_count == 0
    assert build_path(2).edge_count == 1
    p5 = build_path(5)
    assert p5.edge_count == 4
    assert diameter(p5) == bfs_diameter(5, [(i, i + 1) for i in range(4)]) == 4
    assert build_cycle(3).edge_count == 3
    c6 = build_cycle(6)
    assert c6.edge_count == 6 and diameter(c6) == 3
    with pytest.raises(InvalidShape):
        build_cycle(2)
    with pytest.raises(InvalidShape):
        build_path(0)


def test_strong_product_small_cases():
    k4 = strong_product(build_path(2), build_path(2))
    assert k4.edge_count == 6
    g = build_cycle(5)
    assert strong_product(g, build_path(1)).edges == g.edges
    assert strong_product(build_path(6), build_path(4)).edge_count == 68


@pytest.mark.parametrize("n,m", [(n, m) for n in range(2, 9) for m in range(2, n + 1)])
def test_edge_count_formulas(n, m):
    p = build_family(FamilySpec("P", n, m)).graph
    assert p.edge_count == 4 * (n - 1) * (m - 1) + (n - 1) + (m - 1)
    if n < 3:
        return
    c = build_family(FamilySpec("C", n, m)).graph
    assert c.edge_count == p.edge_count + 3 * (m - 1) + 1


@pytest.mark.parametrize("n,m,cycle", [(4, 3, False), (5, 2, True), (3, 3, True), (6, 1, False)])
def test_products_match_adjacency_rule(n, m, cycle):
    fam = build_family(FamilySpec("C" if cycle else "P", n, m))
    assert sorted(fam.graph.edges) == sorted(grid_edges(n, m, cycle))


def test_product_commutes_under_index_swap():
    for n, m in [(3, 2), (4, 3), (5, 2)]:
        a = build_family(FamilySpec("P", n, m))
        b = build_family(FamilySpec("P", m, n))
        swap = {a.indexer.flat(i, j): b.indexer.flat(j, i) for i in range(1, n + 1) for j in range(1, m + 1)}
        assert sorted(tuple(sorted((swap[x], swap[y]))) for x, y in a.graph.edges) == sorted(b.graph.edges)


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))


def test_indexer_round_trip():
    ix = VarIndexer.grid(5, 3)
    for k in range(15):
        assert ix.flat(*ix.coord(k)) == k
    assert ix.flat(2, 3) == 11
    assert ix.var("z2") == 11 and ix.label(11) == "z2"
    wide = VarIndexer.grid(4, 4)
    assert wide.label(wide.flat(3, 4)) == "x3,4" and wide.var("x3,4") == wide.flat(3, 4)


def test_auxiliary_families():
    star = build_family(FamilySpec("Pstar", 5))
    assert star.graph.vertex_count == 16
    ix = star.indexer
    z6 = ix.flat(6, 3)
    assert z6 == 15
    assert star.graph.adjacency[z6] == (1 << ix.flat(5, 3)) | (1 << ix.flat(5, 2))
    ss = build_family(FamilySpec("Pstarstar", 4))
    z6 = ss.indexer.flat(6, 3)
    assert z6 == 13 and ss.graph.adjacency[z6] == (1 << ss.indexer.flat(1, 3)) | (1 << ss.indexer.flat(1, 2))
    dia = build_family(FamilySpec("Cdiamond", 8))
    assert dia.graph.vertex_count == 16
    assert (1, 1) not in dia.indexer.coords and (7, 2) not in dia.indexer.coords


@pytest.mark.parametrize("n", range(3, 9))
def test_diameters(n):
    assert diameter(build_family(FamilySpec("P", n, 3)).graph) == n - 1
    assert diameter(build_family(FamilySpec("P", n, 2)).graph) == n - 1
    assert diameter(build_family(FamilySpec("Pstar", n)).graph) == n
    assert diameter(build_family(FamilySpec("Pstarstar", n)).graph) == n + 1


def test_disconnected_diameter_is_infinite():
    assert diameter(Graph.from_edges(3, [(0, 1)])) == math.inf


def test_family_dsl():
    assert parse_family("P:6,4") == FamilySpec("P", 6, 4)
    assert parse_family(" Pstar:5 ") == FamilySpec("Pstar", 5, 3)
    for bad in ("P:6", "Q:3,3", "P:x", "Cdiamond:5", "C:2,3", "P:1,1", "Pstar:4,2"):
        with pytest.raises(InvalidShape):
            parse_family(bad)
