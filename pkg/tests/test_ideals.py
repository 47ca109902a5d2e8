import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import in_ideal
from strongdepth.bits import mask
from strongdepth.graphs import FamilySpec, build_family
from strongdepth.ideals import (
    SquarefreeIdeal,
    UnitIdealError,
    ZeroIdealError,
    add,
    build_L,
    colon,
    contains,
    edge_ideal,
    family_ideal,
    generators_formula,
    layer_vars,
    minimalize,
    relabel,
    restrict,
    split_by_variable,
)
from strongdepth.graphs import Graph

supports6 = st.lists(st.integers(1, 63), min_size=1, max_size=8)


def named(n, words, m=3):
    x, y, z = layer_vars(n)
    layers = {"x": x, "y": y, "z": z}
    return [mask(layers[w[0]][int(c)] for w, c in zip(t[::2], t[1::2])) for t in words.split()]


def test_minimalize():
    assert minimalize([0b1, 0b11]) == [0b1]
    assert minimalize([]) == []
    rng = random.Random(7)
    for _ in range(50):
        gens = [rng.randrange(1, 64) for _ in range(12)]
        brute = {g for g in gens if not any(h != g and h & g == h for h in gens)}
        assert minimalize(gens) == sorted(brute, key=lambda s: (bin(s).count("1"), [i for i in range(6) if s >> i & 1]))


def test_unit_and_zero_ideals():
    with pytest.raises(UnitIdealError):
        SquarefreeIdeal(3, (0,))
    assert SquarefreeIdeal(3, ()).is_zero
    with pytest.raises(ZeroIdealError):
        edge_ideal(Graph.from_edges(2, []))
    with pytest.raises(ValueError):
        SquarefreeIdeal(3, (0b11, 0b1))


@given(supports6, st.integers(0, 63))
def test_contains_matches_divisibility(gens, s):
    ideal = SquarefreeIdeal.from_supports(6, gens)
    assert contains(ideal, s) == in_ideal(gens, s)


@settings(max_examples=60)
@given(supports6, st.integers(0, 63))
def test_colon_duality(gens, u):
    ideal = SquarefreeIdeal.from_supports(6, gens)
    if contains(ideal, u):
        with pytest.raises(UnitIdealError):
            colon(ideal, u)
        return
    c = colon(ideal, u)
    for s in range(64):
        assert contains(c, s) == contains(ideal, s | u)


@given(supports6, st.integers(0, 63))
def test_restrict_and_add(gens, vars_):
    ideal = SquarefreeIdeal.from_supports(6, gens)
    r = restrict(ideal, vars_)
    assert all(g in ideal.gens for g in r.gens)
    for s in range(64):
        if s & ~vars_ == 0:
            assert contains(r, s) == contains(ideal, s)
    assert add(add(ideal, vars_ or 1), vars_ or 1) == add(ideal, vars_ or 1)


def test_small_operations():
    i12 = SquarefreeIdeal.from_indices(3, [[0, 1]])
    assert colon(i12, 0b1).gens == (0b10,)
    assert add(i12, 0b1).gens == (0b1,)
    assert restrict(SquarefreeIdeal.from_indices(3, [[0, 1], [1, 2]]), 0b011).gens == (0b011,)
    free, col = split_by_variable(i12, 1)
    assert free.is_zero and col.gens == (0b1,)


def test_split_recombines():
    ideal = family_ideal(FamilySpec("P", 4, 2))
    x, _, _ = layer_vars(4)
    free, col = split_by_variable(ideal, x[3])
    bit = 1 << x[3]
    for s in range(1 << ideal.ambient):
        in_free = not s & bit and contains(free, s)
        in_col = bool(s & bit) and contains(col, s & ~bit)
        assert contains(ideal, s) == (in_free or in_col)
        assert not (in_free and in_col)


def test_relabel():
    ideal = family_ideal(FamilySpec("P", 3, 2))
    assert relabel(ideal, list(range(6))) == ideal
    a, b = build_family(FamilySpec("P", 3, 2)).indexer, build_family(FamilySpec("P", 2, 3)).indexer
    swap = [b.flat(j, i) for i, j in a.coords]
    assert relabel(ideal, swap) == family_ideal(FamilySpec("P", 2, 3))
    rng = random.Random(3)
    perm = list(range(6))
    rng.shuffle(perm)
    inv = [perm.index(k) for k in range(6)]
    assert relabel(relabel(ideal, perm), inv) == ideal
    with pytest.raises(ValueError):
        relabel(ideal, [0, 0, 1, 2, 3, 4])


def test_p2_generators_match_displayed_list():
    for n in range(2, 7):
        x, y, _ = layer_vars(n)
        gens = []
        for i in range(1, n):
            gens += [(x[i], y[i]), (x[i], y[i + 1]), (x[i], x[i + 1]), (x[i + 1], y[i]), (y[i], y[i + 1])]
        gens.append((x[n], y[n]))
        assert family_ideal(FamilySpec("P", n, 2)) == SquarefreeIdeal.from_indices(2 * n, gens)


def test_c2_generators_add_four_wraparound_edges():
    x, y, _ = layer_vars(3)
    extra = [(x[1], y[3]), (x[1], x[3]), (y[1], x[3]), (y[1], y[3])]
    p = family_ideal(FamilySpec("P", 3, 2))
    assert generators_formula(FamilySpec("C", 3, 2)) == SquarefreeIdeal.from_indices(6, [tuple(
        i for i in range(6) if g >> i & 1) for g in p.gens] + extra)


@pytest.mark.parametrize("n", range(3, 11))
def test_generator_counts(n):
    p = family_ideal(FamilySpec("P", n, 2))
    assert len(p.gens) == 5 * (n - 1) + 1
    assert len(family_ideal(FamilySpec("C", n, 2)).gens) == len(p.gens) + 4


def test_formula_matches_product_up_to_24_vars():
    for fam in ("P", "C"):
        for n in range(1, 25):
            for m in range(1, 25):
                if n * m > 24:
                    break
                try:
                    spec = FamilySpec(fam, n, m)
                except ValueError:
                    continue
                assert generators_formula(spec) == family_ideal(spec), spec
    assert len(generators_formula(FamilySpec("P", 4, 4)).gens) == 4 * 3 * 3 + 3 + 3
    assert generators_formula(FamilySpec("P", 2, 1)).gens == (0b11,)
    with pytest.raises(ValueError):
        generators_formula(FamilySpec("Pstar", 3))


def test_colon_c52_by_x5():
    ideal = family_ideal(FamilySpec("C", 5, 2))
    x, y, _ = layer_vars(5)
    c = colon(ideal, 1 << x[5])
    linear = {g for g in c.gens if g & (g - 1) == 0}
    assert linear == {1 << v for v in (x[1], y[1], x[4], y[4], y[5])}
    rest = {g for g in c.gens if g & (g - 1)}
    assert rest == set(named(5, "x2y2 x2y3 x2x3 x3y2 y2y3 x3y3"))


def test_add_c52_x5():
    ideal = family_ideal(FamilySpec("C", 5, 2))
    j = add(ideal, 1 << layer_vars(5)[0][5])
    for g in named(5, "x4y5 y4y5 y1y5 x1y5"):
        assert g in j.gens
    assert 1 << layer_vars(5)[0][5] in j.gens


def test_restrict_p52_to_s_double_prime():
    ideal = family_ideal(FamilySpec("P", 5, 2))
    x, y, _ = layer_vars(5)
    keep = mask(x[1:4] + y[1:4] + [x[5], y[5]])
    r = restrict(ideal, keep)
    expected = set(family_ideal(FamilySpec("P", 3, 2)).gens)
    # P_{3,2} on columns 1..3 uses x1..x3 at 0..2 and y1..y3 at 3..5; move y to 5..7
    moved = {mask((k if k < 3 else k + 2) for k in range(6) if g >> k & 1) for g in expected}
    assert set(r.gens) == moved | {(1 << x[5]) | (1 << y[5])}


def test_build_L():
    x, y, z = layer_vars(5)
    l3 = build_L(5, 3)
    linear = {g for g in l3.gens if g & (g - 1) == 0}
    assert linear == {1 << v for v in (x[2], z[2], x[3], y[1], z[3], x[1], z[1])}
    x, _, z = layer_vars(6)
    l = build_L(6, 3)
    assert (1 << x[5]) | (1 << x[6]) in l.gens and (1 << z[5]) | (1 << z[6]) in l.gens
    for n in range(5, 10):
        for ll in range(3, n - 1):
            assert len(build_L(n, ll).gens) == 7 + 2 * (ll - 2)
    for bad in ((5, 2), (5, 4), (6, 5)):
        with pytest.raises(ValueError):
            build_L(*bad)


def test_json_round_trip():
    spec = FamilySpec("C", 4, 3)
    ideal = family_ideal(spec)
    data = ideal.to_json(build_family(spec).indexer)
    assert data["labels"]["5"] == [2, 2]
    assert SquarefreeIdeal.from_json(data) == ideal
