import random

import pytest
from hypothesis import given, settings, strategies as st

from bordermin.bmp import (
    check_enveloped,
    flips,
    is_consecutive,
    make_consecutive,
    multiset_permutations,
    placement_patterns,
    solve_bmp_budget,
    solve_bmp_oracle,
    solve_bmp_template,
)
from bordermin.config import SolverConfig
from bordermin.core import Alphabet, Instance, Placement, compute_bl, placement_from_pattern
from bordermin.errors import InstanceTooLarge

from _corpus import bmp_corpus, random_instance, random_placement

AB8 = Instance(("A",) * 4 + ("B",) * 4, 2, 4)


def test_multiset_permutations_count():
    assert len(list(multiset_permutations([2, 2]))) == 6
    assert len(list(multiset_permutations([1, 1, 1]))) == 6


def test_flip_orbit_and_quotient():
    pats = placement_patterns(Instance(("A", "B", "C", "D"), 2, 2))
    # 24 placements, each orbit under the two flips has 4 members
    assert len(pats) == 6
    assert len(set(flips((0, 1, 2, 3), 2, 2))) == 4


def test_oracle_small_cases():
    sol = solve_bmp_oracle(Instance(("A", "A", "B", "B"), 2, 2))
    assert (sol.border_length, sol.deposition) == (4, "AB")
    assert solve_bmp_oracle(Instance(("A",), 1, 1)).border_length == 0


def test_aba_free_placement_beats_fixed_one():
    # with the placement free, the two a's sit side by side
    inst = Instance(("a", "b", "a"), 1, 3)
    sol = solve_bmp_oracle(inst)
    assert sol.border_length == 2
    assert sol.placement.probe_grid(inst) == (("a", "a", "b"),)
    assert solve_bmp_template(inst).border_length == 2
    assert solve_bmp_budget(inst, 4).border_length == 2
    assert solve_bmp_budget(inst, 1) is None


def test_oracle_cap():
    with pytest.raises(InstanceTooLarge):
        solve_bmp_oracle(AB8, SolverConfig(oracle_cap=4))


def test_template_2x4():
    sol = solve_bmp_template(AB8)
    assert (sol.border_length, sol.deposition) == (4, "AB")
    assert sol.stats["template"] == (("A", "A"), ("B", "B")) or list(map(tuple, sol.stats["template"])) == [
        ("A", "A"),
        ("B", "B"),
    ]
    assert list(sol.stats["multiplicities"]) == [2, 2]
    assert sol.stats["cost_v"] == 0
    assert solve_bmp_oracle(AB8).key() == sol.key()


def test_template_identical_probes():
    sol = solve_bmp_template(Instance(("AB",) * 4, 2, 2))
    assert sol.border_length == 0
    assert list(sol.stats["multiplicities"]) == [2]


def test_enveloped():
    assert check_enveloped(Instance(("A",) * 100 + ("B",) * 2, 6, 17), 2) == "A"
    assert check_enveloped(Instance(("A",) * 50 + ("B",) * 50, 10, 10), 2) is None
    assert check_enveloped(Instance(("X",) * 6, 2, 3), 0) == "X"


def test_case_split_corner():
    inst = Instance(("A",) * 24 + ("B",), 5, 5)
    sol = solve_bmp_budget(inst, 4)
    assert sol.border_length == 4
    assert sol.stats["case"] == "both-short"
    i, j = [(i, j) for i, row in enumerate(sol.placement.probe_grid(inst)) for j, p in enumerate(row) if p == "B"][0]
    assert i in (0, 4) and j in (0, 4)
    assert solve_bmp_budget(inst, 3) is None


def test_case_split_both_long():
    inst = Instance(("A",) * 48 + ("AB",), 7, 7)
    sol = solve_bmp_budget(inst, 2)
    assert sol.stats["case"] == "both-long"
    assert sol.border_length == 2
    assert solve_bmp_budget(inst, 1) is None
    # no probe envelops the others: certified no-instance without search
    assert solve_bmp_budget(Instance(("A",) * 25 + ("B",) * 24, 7, 7), 2) is None


def test_case_split_zero_budget():
    inst = Instance(("A",) * 8 + ("B",), 3, 3)
    assert solve_bmp_budget(inst, 0) is None


def test_case_split_one_long():
    inst = Instance(("A",) * 10 + ("AB",) * 2, 2, 6)
    sol = solve_bmp_budget(inst, 2)
    assert sol.stats["case"] == "one-long"
    assert sol.border_length == 2
    assert solve_bmp_budget(inst.transposed(), 2).border_length == 2


def test_make_consecutive_aba():
    inst = Instance(("A", "B", "A"), 1, 3)
    place = Placement.identity(1, 3)
    assert not is_consecutive(inst, place)
    new = make_consecutive(inst, place)
    assert is_consecutive(inst, new)
    assert compute_bl(inst, place, "AB") == 4
    assert compute_bl(inst, new, "AB") == 2


def test_make_consecutive_fixpoint():
    place = Placement.identity(2, 4)
    assert make_consecutive(AB8, place) == place


@pytest.mark.parametrize("inst", bmp_corpus(n=60, seed=99))
def test_three_solvers_agree(inst):
    oracle = solve_bmp_oracle(inst)
    template = solve_bmp_template(inst)
    budget = solve_bmp_budget(inst, oracle.border_length)
    assert oracle.key() == template.key() == budget.key()
    for sol in (oracle, template, budget):
        assert sol.verify()
    if oracle.border_length:
        assert solve_bmp_budget(inst, oracle.border_length - 1) is None


def test_oracle_beats_every_placement_under_every_sequence():
    rng = random.Random(3)
    for _ in range(15):
        inst = random_instance(rng, 2, 2, 2, 2)
        best = solve_bmp_oracle(inst).border_length
        for _ in range(5):
            from bordermin.pbmp import solve_pbmp

            assert solve_pbmp(inst, random_placement(rng, 2, 2)).border_length >= best


@st.composite
def consecutive_case(draw):
    rows = draw(st.integers(1, 3))
    cols = draw(st.integers(2, 5))
    kinds = draw(st.lists(st.text("AB", min_size=1, max_size=2), min_size=1, max_size=3))
    probes = tuple(draw(st.sampled_from(kinds)) for _ in range(rows * cols))
    inst = Instance(probes, rows, cols, Alphabet(("A", "B")))
    place = Placement.from_flat(draw(st.permutations(range(rows * cols))), rows, cols)
    return inst, place


@settings(max_examples=150, deadline=None)
@given(consecutive_case())
def test_make_consecutive_never_increases_border(case):
    inst, place = case
    from bordermin.enumeration import enumerate_good_depositions

    new = make_consecutive(inst, place)
    assert is_consecutive(inst, new)
    assert sorted(new.flat()) == sorted(place.flat())
    for i, dep in enumerate(enumerate_good_depositions(inst)):
        if i == 5:
            break
        assert compute_bl(inst, new, dep) <= compute_bl(inst, place, dep)


def test_placement_from_pattern_is_canonical():
    inst = Instance(("A", "B", "A", "B"), 2, 2)
    place = placement_from_pattern(inst, (0, 0, 1, 1))
    assert place.probe_grid(inst) == (("A", "A"), ("B", "B"))
    assert place.flat() == (0, 2, 1, 3)
