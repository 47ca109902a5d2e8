import random

import pytest

from oracles import brute_verify
from strongdepth.graphs import FamilySpec, parse_family
from strongdepth.ideals import SquarefreeIdeal, family_ideal
from strongdepth.stanley.decomposition import (
    StanleyDecomposition,
    StanleySpace,
    UnverifiedWitness,
    partition_to_decomposition,
    shift_decomposition,
    verify_decomposition,
)
from strongdepth.stanley.poset import ideal_module, pair_module, quotient_module
from strongdepth.stanley.search import Interval, PartitionWitness, sdepth_exact


def _brute(dec):
    t = dec.target
    outer = t.outer.gens if t.outer is not None else ()
    return brute_verify([(sp.w, sp.free) for sp in dec.spaces], t.kind, t.inner.gens, outer, t.ambient)


def test_space_membership():
    sp = StanleySpace(0b01, 0b11)
    assert sp.dimension == 2
    assert sp.covers((1, 0)) and sp.covers((3, 5))
    assert not sp.covers((0, 1))
    assert not StanleySpace(0b01, 0b10).covers((2, 0))


def test_search_witnesses_become_decompositions():
    for spec in ("P:4,1", "C:3,2", "P:2,2"):
        ideal = family_ideal(parse_family(spec))
        for desc in (ideal_module(ideal), quotient_module(ideal)):
            res = sdepth_exact(desc)
            dec = partition_to_decomposition(res.witness)
            assert verify_decomposition(dec) and _brute(dec) is None
            assert dec.min_dimension == res.value


def test_dropping_a_space_is_reported():
    ideal = family_ideal(FamilySpec("P", 4, 1))
    dec = partition_to_decomposition(sdepth_exact(quotient_module(ideal)).witness)
    for k in range(len(dec.spaces)):
        broken = StanleyDecomposition(dec.spaces[:k] + dec.spaces[k + 1 :], dec.target)
        result = verify_decomposition(broken)
        assert not result and result.count == 0
        assert _brute(broken) is not None


def test_overlap_and_partial_spaces_are_reported():
    ideal = SquarefreeIdeal.from_indices(2, [[0, 1]])
    target = quotient_module(ideal)
    good = StanleyDecomposition((StanleySpace(0, 0b01), StanleySpace(0b10, 0b10)), target)
    assert verify_decomposition(good) and _brute(good) is None
    twice = StanleyDecomposition(good.spaces + (StanleySpace(0b01, 0b01),), target)
    bad = verify_decomposition(twice)
    assert bad.pattern == (1, 0) and bad.count == 2
    # x1 * K[x2] misses x1^2 x2 etc.; the verifier must flag it
    partial = StanleyDecomposition((StanleySpace(0, 0), StanleySpace(0b01, 0b10), StanleySpace(0b10, 0b10)),
                                   quotient_module(SquarefreeIdeal.from_indices(2, [[0, 1]])))
    assert not verify_decomposition(partial) and _brute(partial) is not None


def test_matches_brute_force_on_random_space_lists():
    rng = random.Random(9)
    agree = 0
    for _ in range(300):
        n = rng.randint(1, 4)
        gens = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 3))]
        ideal = SquarefreeIdeal.from_supports(n, gens)
        kind = rng.choice(["ideal", "quotient"])
        target = ideal_module(ideal) if kind == "ideal" else quotient_module(ideal)
        spaces = []
        for _ in range(rng.randint(1, 6)):
            w = rng.randrange(1 << n)
            spaces.append(StanleySpace(w, rng.randrange(1 << n) | (w if rng.random() < 0.8 else 0)))
        dec = StanleyDecomposition(tuple(spaces), target)
        assert bool(verify_decomposition(dec)) == (_brute(dec) is None)
        agree += 1
    assert agree == 300


def test_pair_decomposition_checked_by_brute_force():
    outer = SquarefreeIdeal.from_indices(3, [[0]])
    inner = SquarefreeIdeal.from_indices(3, [[0, 1]])
    dec = partition_to_decomposition(sdepth_exact(pair_module(outer, inner)).witness)
    assert verify_decomposition(dec) and _brute(dec) is None


def test_unverified_witness_is_rejected():
    target = quotient_module(SquarefreeIdeal.from_indices(2, [[0, 1]]))
    with pytest.raises(UnverifiedWitness):
        partition_to_decomposition(PartitionWitness((Interval(0, 0b01),), target))


def test_shift_and_json():
    target = quotient_module(SquarefreeIdeal.from_indices(2, [[0, 1]]))
    inner = StanleyDecomposition((StanleySpace(0, 0b01), StanleySpace(0b10, 0b10)), target)
    lifted = shift_decomposition(inner, [3, 5], prefix=0b1, adjoin=0b1)
    assert lifted == [StanleySpace(0b1, 0b1001), StanleySpace(0b100001, 0b100001)]
    assert StanleyDecomposition.from_json(inner.to_json()) == inner.normalized()
    assert "K[" in inner.pretty()
