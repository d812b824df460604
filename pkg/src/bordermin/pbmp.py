"""Exact solvers for the placement-given problem (P-BMP^e)."""

from __future__ import annotations

import math
from collections import Counter

from .config import SolverConfig, default_config
from .core import Instance, Placement, Solution, compute_bl, neighbor_pairs
from .enumeration import (
    Frontier,
    State,
    enumerate_good_depositions,
    enumerate_primal_sequences,
    expand_primal,
)
from .errors import InstanceTooLarge


class MaskCost:
    """Border of the mask that deposits into a given set of distinct probes.

    Only edges between cells holding different distinct probes can carry a
    border, so the grid is collapsed to weighted edges between distinct ids.
    """

    def __init__(self, instance: Instance, placement: Placement):
        pattern = placement.pattern(instance)
        cols = instance.cols
        weights: Counter = Counter()
        for (a, b), (c, d) in neighbor_pairs(instance.rows, cols):
            u, v = pattern[a * cols + b], pattern[c * cols + d]
            if u != v:
                weights[(min(u, v), max(u, v))] += 1
        self.edges = sorted(weights.items())
        self.p = len(instance.distinct)

    def __call__(self, moved: list[int]) -> int:
        inside = [False] * self.p
        for d in moved:
            inside[d] = True
        return sum(w for (u, v), w in self.edges if inside[u] != inside[v])


def solve_pbmp_bruteforce(instance: Instance, placement: Placement) -> Solution:
    """Score every good deposition sequence with the neighbour-Hamming sum."""
    placement.check(instance)
    best_bl, best_d, count = None, None, 0
    for d in enumerate_good_depositions(instance):
        count += 1
        bl = compute_bl(instance, placement, d, "hamming")
        if best_bl is None or bl < best_bl:
            best_bl, best_d = bl, d
    return Solution(instance, placement, best_d, best_bl, {"depositions": count})


def solve_pbmp(instance: Instance, placement: Placement, config: SolverConfig | None = None) -> Solution:
    """Minimum border length over all good deposition sequences for a fixed placement.

    Depth-first search over frontier states in lexicographic order.  Mask
    borders are non-negative and additive, so a prefix is cut once its
    accumulated border reaches the incumbent, or once the same frontier
    state was already reached (by a lexicographically smaller prefix) at no
    greater cost.  Ties resolve to the lexicographically smallest sequence.
    """
    config = config or default_config()
    placement.check(instance)
    fr = Frontier(instance)
    cost = MaskCost(instance, placement)
    symbols = fr.symbols
    seen: dict[State, int] = {}
    path: list[str] = []
    best_bl = math.inf
    best_d: str | None = None
    nodes = leaves = 0

    def rec(state: State, g: int) -> None:
        nonlocal best_bl, best_d, nodes, leaves
        nodes += 1
        if nodes > config.node_budget:
            raise InstanceTooLarge(f"P-BMP search exceeded {config.node_budget} nodes")
        if g >= best_bl or seen.get(state, math.inf) <= g:
            return
        seen[state] = g
        if state == fr.terminal:
            leaves += 1
            d = "".join(path)
            bl = compute_bl(instance, placement, d, "fast")
            if bl != g:
                raise AssertionError(f"incremental border {g} disagrees with recomputed {bl} for {d!r}")
            best_bl, best_d = bl, d
            return
        for x in symbols:
            moved = fr.moves(state, x)
            if not moved:
                continue
            nxt = fr.advance(state, x)
            path.append(x)
            rec(nxt, g + cost(moved))
            path.pop()

    rec(fr.initial, 0)
    return Solution(instance, placement, best_d, int(best_bl), {"nodes": nodes, "leaves": leaves})


def distinct_bound_rejects(instance: Instance, o: int) -> bool:
    """True when more than o+1 distinct probes make a border <= o impossible."""
    return instance.size > 1 and len(instance.distinct) > o + 1


def solve_pbmp_budget(
    instance: Instance,
    placement: Placement,
    o: int,
    *,
    exhaustive: bool = False,
    config: SolverConfig | None = None,
) -> Solution | None:
    """Optimal deposition sequence with border length <= ``o``, or ``None``.

    Branches on primal sequences (the characters whose mask is not
    trivial).  With ``exhaustive=True`` every string of length <= o is
    expanded literally; otherwise primal characters are chosen one at a
    time and a branch is dropped once its accumulated border exceeds the
    budget.  Both modes return the same solution.
    """
    config = config or default_config()
    placement.check(instance)
    if o < 0:
        raise ValueError("budget must be non-negative")
    if distinct_bound_rejects(instance, o):
        return None
    if exhaustive:
        return _budget_exhaustive(instance, placement, o)
    return _budget_search(instance, placement, o, config)


def _budget_exhaustive(instance: Instance, placement: Placement, o: int) -> Solution | None:
    best = None
    expanded = 0
    for primal in enumerate_primal_sequences(instance.alphabet, o):
        d = expand_primal(primal, instance, placement)
        if d is None:
            continue
        expanded += 1
        bl = compute_bl(instance, placement, d, "fast")
        if bl > o:
            continue
        key = (bl, instance.alphabet.key(d))
        if best is None or key < best[0]:
            best = (key, d, bl)
    if best is None:
        return None
    return Solution(instance, placement, best[1], best[2], {"expanded": expanded})


def _budget_search(instance: Instance, placement: Placement, o: int, config: SolverConfig) -> Solution | None:
    fr = Frontier(instance)
    cost = MaskCost(instance, placement)
    seen: dict[State, int] = {}
    best_bl = math.inf
    best_d: str | None = None
    nodes = 0

    def rec(state: State, prefix: list[str], g: int, used: int) -> None:
        nonlocal best_bl, best_d, nodes
        nodes += 1
        if nodes > config.node_budget:
            raise InstanceTooLarge(f"budgeted P-BMP search exceeded {config.node_budget} nodes")
        if seen.get(state, math.inf) <= g:
            return
        seen[state] = g
        if state == fr.terminal:
            d = "".join(prefix)
            bl = compute_bl(instance, placement, d, "fast")
            if bl != g:
                raise AssertionError(f"incremental border {g} disagrees with recomputed {bl} for {d!r}")
            best_bl, best_d = bl, d
            return
        if used == o:
            return
        for x in fr.symbols:
            moved = fr.moves(state, x)
            if not moved:
                continue
            h = g + cost(moved)
            if h > o or h >= best_bl:
                continue
            tail = [x]
            nxt = fr.close(fr.advance(state, x), tail)
            rec(nxt, prefix + tail, h, used + 1)

    start: list[str] = []
    rec(fr.close(fr.initial, start), start, 0, 0)
    if best_d is None:
        return None
    return Solution(instance, placement, best_d, int(best_bl), {"nodes": nodes})
