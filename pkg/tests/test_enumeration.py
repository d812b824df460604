import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bordermin.core import Alphabet, Instance, Placement, is_good, is_subsequence
from bordermin.enumeration import (
    column_placements,
    count_primal_sequences,
    enumerate_good_depositions,
    enumerate_primal_sequences,
    expand_primal,
    good_depositions_with_short_primal,
    primal_of,
)
from bordermin.errors import NotGood

CTAC4 = Instance(("CA", "CT", "TA", "AC"), 2, 2, Alphabet(tuple("CTA")))
ABA = Instance(("a", "b", "a"), 1, 3)


def brute_good(inst, max_len):
    """Every string up to max_len that is a good supersequence, by direct check."""
    out = set()
    for n in range(max_len + 1):
        for combo in itertools.product(inst.alphabet.symbols, repeat=n):
            d = "".join(combo)
            if all(is_subsequence(p, d) for p in inst.probes) and is_good(inst, None, d):
                out.add(d)
    return out


def test_ab_ba_stream():
    inst = Instance(("AB", "BA"), 1, 2)
    got = list(enumerate_good_depositions(inst, 4))
    assert "ABA" in got and "BAB" in got
    assert not [d for d in got if len(d) == 4]
    assert set(got) == brute_good(inst, 4)


def test_single_probe_stream():
    assert list(enumerate_good_depositions(Instance(("A",), 1, 1))) == ["A"]


def test_ctac_stream_contains_ctac():
    assert "CTAC" in set(enumerate_good_depositions(CTAC4, 8))


def test_stream_is_lexicographic_and_duplicate_free():
    got = list(enumerate_good_depositions(CTAC4))
    keys = [CTAC4.alphabet.key(d) for d in got]
    assert keys == sorted(keys)
    assert len(set(got)) == len(got)


def test_max_len_below_longest_probe():
    with pytest.raises(ValueError):
        list(enumerate_good_depositions(CTAC4, 1))


def test_primal_sequences():
    assert list(enumerate_primal_sequences("AB", 2)) == ["", "A", "B", "AA", "AB", "BA", "BB"]
    assert list(enumerate_primal_sequences("A", 0)) == [""]
    assert len(list(enumerate_primal_sequences("ABC", 3))) == count_primal_sequences(3, 3) == 40


def test_expand_primal_examples():
    assert expand_primal("", Instance(("AB",) * 4, 2, 2)) == "AB"
    assert expand_primal("ab", ABA, Placement.identity(1, 3)) == "ab"
    assert expand_primal("", Instance(("A", "B"), 1, 2)) is None


def test_primal_of_examples():
    assert primal_of(Instance(("AB",) * 4, 2, 2), None, "AB") == ""
    assert primal_of(CTAC4, Placement.identity(2, 2), "CTAC") == "CTAC"
    assert primal_of(ABA, None, "ab") == "ab"
    with pytest.raises(NotGood):
        primal_of(Instance(("A",), 1, 1), None, "AA")


def test_short_primal_stream_matches_literal_expansion():
    for inst in (CTAC4, ABA, Instance(("AB", "BA", "A", "B"), 2, 2)):
        for o in range(5):
            literal = {expand_primal(p, inst) for p in enumerate_primal_sequences(inst.alphabet, o)} - {None}
            assert set(good_depositions_with_short_primal(inst, o)) == literal


def test_column_placements():
    aabb = Instance(("A", "A", "B", "B"), 2, 2)
    assert column_placements(aabb) == [("A", "A"), ("A", "B"), ("B", "A"), ("B", "B")]
    assert column_placements(Instance(("A", "B", "C"), 1, 3)) == [("A",), ("B",), ("C",)]
    assert column_placements(Instance(("A", "B"), 2, 1)) == [("A", "B"), ("B", "A")]


@st.composite
def small_instance(draw):
    rows = draw(st.integers(1, 2))
    cols = draw(st.integers(1, 3))
    probes = draw(st.lists(st.text("AB", min_size=1, max_size=2), min_size=rows * cols, max_size=rows * cols))
    return Instance(tuple(probes), rows, cols, Alphabet(("A", "B")))


@settings(max_examples=60, deadline=None)
@given(small_instance())
def test_stream_equals_brute_force(inst):
    bound = sum(len(p) for p in inst.distinct)
    assert set(enumerate_good_depositions(inst)) == brute_good(inst, bound)


@settings(max_examples=80, deadline=None)
@given(small_instance())
def test_primal_round_trip(inst):
    for d in enumerate_good_depositions(inst):
        assert expand_primal(primal_of(inst, None, d), inst) == d
