"""Exact solvers for BMP^e: placement and deposition sequence together."""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from .config import SolverConfig, default_config
from .core import (
    Instance,
    Placement,
    Solution,
    border_pair,
    compute_bl,
    embeddings,
    neighbor_pairs,
    placement_from_pattern,
)
from .enumeration import (
    Frontier,
    column_placements,
    enumerate_good_depositions,
    good_depositions_with_short_primal,
)
from .errors import InstanceTooLarge
from .ilp import IntegerProgram, solve_min
from .pbmp import distinct_bound_rejects, solve_pbmp_budget

Pattern = tuple[int, ...]


# -- placement enumeration --------------------------------------------------


def multiset_permutations(counts: Sequence[int]) -> Iterator[Pattern]:
    """Distinct arrangements of a multiset of ids, lexicographically."""
    counts = list(counts)
    n = sum(counts)
    out = [0] * n

    def rec(i: int) -> Iterator[Pattern]:
        if i == n:
            yield tuple(out)
            return
        for d, k in enumerate(counts):
            if k:
                counts[d] -= 1
                out[i] = d
                yield from rec(i + 1)
                counts[d] += 1

    return rec(0)


def flips(pattern: Pattern, rows: int, cols: int) -> list[Pattern]:
    """The pattern under identity, horizontal, vertical and both flips."""
    grid = [pattern[i * cols:(i + 1) * cols] for i in range(rows)]
    h = [row[::-1] for row in grid]
    out = []
    for g in (grid, h, grid[::-1], h[::-1]):
        out.append(tuple(v for row in g for v in row))
    return out


def flip_canonical(instance: Instance, pattern: Pattern) -> bool:
    """Whether ``pattern`` has the smallest placement key in its flip orbit."""
    own = placement_from_pattern(instance, pattern).key()
    for other in flips(pattern, instance.rows, instance.cols)[1:]:
        if other != pattern and placement_from_pattern(instance, other).key() < own:
            return False
    return True


def placement_patterns(instance: Instance, modulo_flips: bool = True) -> list[Pattern]:
    """All placements up to duplicate probes (and flips), sorted by placement key."""
    keyed = []
    for pat in multiset_permutations(instance.multiplicity):
        if modulo_flips and not flip_canonical(instance, pat):
            continue
        keyed.append((placement_from_pattern(instance, pat).key(), pat))
    keyed.sort()
    return [pat for _, pat in keyed]


def _pair_table(instance: Instance, deposition: str) -> list[list[int]]:
    emb = embeddings(instance, deposition)
    p = len(emb)
    table = [[0] * p for _ in range(p)]
    for a in range(p):
        for b in range(a + 1, p):
            table[a][b] = table[b][a] = border_pair(emb[a], emb[b])
    return table


def _nontrivial_masks(instance: Instance, deposition: str) -> int:
    fr = Frontier(instance)
    state = fr.initial
    count = 0
    for x in deposition:
        if not fr.is_trivial(state, x):
            count += 1
        state = fr.advance(state, x)
    return count


def _better(candidate: tuple, best: tuple | None) -> bool:
    return best is None or candidate < best


# -- exhaustive oracle --------------------------------------------------------


def solve_bmp_oracle(instance: Instance, config: SolverConfig | None = None) -> Solution:
    """Minimum over every placement (up to duplicates and flips) and every good sequence."""
    config = config or default_config()
    if instance.size > config.oracle_cap:
        raise InstanceTooLarge(f"oracle is capped at {config.oracle_cap} cells, instance has {instance.size}")
    patterns = placement_patterns(instance)
    pats = np.array(patterns, dtype=np.int64).reshape(len(patterns), instance.size)
    pairs = neighbor_pairs(instance.rows, instance.cols)
    cols = instance.cols
    u = np.array([a * cols + b for (a, b), _ in pairs], dtype=np.int64)
    v = np.array([c * cols + d for _, (c, d) in pairs], dtype=np.int64)
    left, right = pats[:, u], pats[:, v]
    best = None
    count = 0
    for d in enumerate_good_depositions(instance):
        count += 1
        table = np.array(_pair_table(instance, d), dtype=np.int64)
        scores = table[left, right].sum(axis=1)
        i = int(np.argmin(scores))
        bl = int(scores[i])
        if best is None or bl < best[0]:
            best = (bl, d, patterns[i])
    bl, d, pat = best
    placement = placement_from_pattern(instance, pat)
    stats = {"placements": len(patterns), "depositions": count}
    return Solution(instance, placement, d, bl, stats)


# -- consecutive placements ---------------------------------------------------


def columns_of(instance: Instance, placement: Placement) -> list[tuple[str, ...]]:
    grid = placement.probe_grid(instance)
    return [tuple(grid[i][j] for i in range(instance.rows)) for j in range(instance.cols)]


def is_consecutive(instance: Instance, placement: Placement) -> bool:
    cols = columns_of(instance, placement)
    seen = set()
    for j, col in enumerate(cols):
        if j and col == cols[j - 1]:
            continue
        if col in seen:
            return False
        seen.add(col)
    return True


def make_consecutive(instance: Instance, placement: Placement, deposition: str | None = None) -> Placement:
    """Group identical columns into contiguous blocks without raising the border.

    Repeatedly takes the first block whose column type reappears later and
    moves the next occurrence right behind it; each move grows that block,
    so at most ``cols`` moves are made.  ``deposition`` is accepted for
    symmetry with the other operations; the move never increases the border
    under any deposition sequence.
    """
    placement.check(instance)
    probes = placement.probe_grid(instance)
    cols = [(tuple(probes[i][j] for i in range(instance.rows)), tuple(row[j] for row in placement.grid))
            for j in range(instance.cols)]
    m = len(cols)
    moves = 0
    while True:
        target = None
        for a in range(m - 1):
            if cols[a + 1][0] == cols[a][0]:
                continue
            for b in range(a + 2, m):
                if cols[b][0] == cols[a][0]:
                    target = (a, b)
                    break
            if target:
                break
        if target is None:
            break
        a, b = target
        cols.insert(a + 1, cols.pop(b))
        moves += 1
        if moves > m:
            raise AssertionError("column grouping did not terminate within m moves")
    grid = tuple(tuple(cols[j][1][i] for j in range(m)) for i in range(instance.rows))
    return Placement(grid)


# -- template + integer program -----------------------------------------------


def template_program(
    instance: Instance,
    template: Sequence[Sequence[int]],
    vertical: Sequence[int],
) -> IntegerProgram:
    """Integer program choosing how often each template column repeats.

    Variables are ``h_1..h_t`` followed by ``cost_v``.  Constraints: every
    distinct probe is used exactly as often as it occurs, each ``h_z >= 1``,
    and ``cost_v`` equals the vertical border of the chosen repetitions.
    The objective minimizes ``cost_v``.
    """
    t = len(template)
    m = instance.cols
    p = len(instance.distinct)
    rows = []
    for s in range(p):
        coeffs = [sum(1 for d in col if d == s) for col in template]
        rows.append((tuple(coeffs) + (0,), instance.multiplicity[s]))
    rows.append((tuple(-v for v in vertical) + (1,), 0))
    cap = m * max(vertical, default=0)
    return IntegerProgram(
        objective=(0,) * t + (1,),
        equalities=tuple(rows),
        lower=(1,) * t + (0,),
        upper=(m,) * t + (cap,),
    )


def _template_search(
    instance: Instance,
    depositions: Iterable[str],
    config: SolverConfig,
    max_cost: int | None = None,
) -> Solution | None:
    r, m = instance.rows, instance.cols
    p = len(instance.distinct)
    mult = instance.multiplicity
    types = column_placements(instance, as_ids=True)
    type_counts = []
    for col in types:
        cnt = [0] * p
        for d in col:
            cnt[d] += 1
        type_counts.append(cnt)

    best = None  # (key, solution-pieces)
    best_bl = math.inf if max_cost is None else max_cost
    branches = ilps = n_dep = 0

    for dep in depositions:
        n_dep += 1
        bound = best_bl if best is None else best[0][0]
        # Each non-trivial mask costs at least one on a connected grid; a later
        # sequence only wins a tie if it is strictly cheaper.
        lb = _nontrivial_masks(instance, dep) if instance.size > 1 else 0
        if lb > bound or (best is not None and lb >= bound):
            continue
        table = _pair_table(instance, dep)
        vert = [sum(table[col[i]][col[i + 1]] for i in range(r - 1)) for col in types]
        dkey = instance.alphabet.key(dep)

        def horiz(z1: int, z2: int) -> int:
            a, b = types[z1], types[z2]
            return sum(table[a[i]][b[i]] for i in range(r))

        seq: list[int] = []
        used = [0] * p
        in_seq = [False] * len(types)

        def rec(cost_h: int) -> None:
            nonlocal best, branches, ilps
            branches += 1
            if branches > config.branch_budget:
                raise InstanceTooLarge(f"template search exceeded {config.branch_budget} branches")
            if seq and all(used[s] > 0 for s in range(p)):
                ilps += 1
                prog = template_program(instance, [types[z] for z in seq], [vert[z] for z in seq])
                sol = solve_min(prog)
                if sol is not None:
                    h = sol.assignment[:-1]
                    total = sol.objective_value + cost_h
                    limit = best_bl if best is None else best[0][0]
                    if total <= limit:
                        pattern = [0] * (r * m)
                        j = 0
                        for z, reps in zip(seq, h):
                            for _ in range(reps):
                                for i in range(r):
                                    pattern[i * m + j] = types[z][i]
                                j += 1
                        placement = placement_from_pattern(instance, pattern)
                        key = (total, dkey, placement.key())
                        if _better(key, best[0] if best else None):
                            best = (key, dep, placement, {
                                "template": [tuple(instance.distinct[d] for d in types[z]) for z in seq],
                                "multiplicities": list(h),
                                "cost_v": sol.objective_value,
                                "cost_h": cost_h,
                            })
            if len(seq) == m:
                return
            limit = best_bl if best is None else best[0][0]
            for z in range(len(types)):
                if in_seq[z]:
                    continue
                cnt = type_counts[z]
                if any(used[s] + cnt[s] > mult[s] for s in range(p)):
                    continue
                ch = cost_h + (horiz(seq[-1], z) if seq else 0)
                if ch > limit:
                    continue
                seq.append(z)
                in_seq[z] = True
                for s in range(p):
                    used[s] += cnt[s]
                rec(ch)
                for s in range(p):
                    used[s] -= cnt[s]
                in_seq[z] = False
                seq.pop()

        rec(0)

    if best is None:
        return None
    key, dep, placement, info = best
    bl = compute_bl(instance, placement, dep, "fast")
    if bl != key[0]:
        raise AssertionError(f"template cost {key[0]} disagrees with recomputed border {bl}")
    info.update(branches=branches, ilps=ilps, depositions=n_dep)
    return Solution(instance, placement, dep, bl, info)


def solve_bmp_template(instance: Instance, config: SolverConfig | None = None) -> Solution:
    """Branch on good sequences and ordered column templates, size blocks by integer program."""
    config = config or default_config()
    sol = _template_search(instance, enumerate_good_depositions(instance), config)
    if sol is None:
        raise AssertionError("template search found no placement; the full-width template always exists")
    return sol


# -- budgeted case split ------------------------------------------------------


def check_enveloped(instance: Instance, o: int) -> str | None:
    """A probe ``s`` with at most o^2 probes differing from it, most frequent first."""
    order = sorted(
        range(len(instance.distinct)),
        key=lambda d: (-instance.multiplicity[d], instance.alphabet.key(instance.distinct[d])),
    )
    for d in order:
        if instance.size - instance.multiplicity[d] <= o * o:
            return instance.distinct[d]
    return None


def _corner_cells(rows: int, cols: int, o: int) -> list[tuple[int, int]]:
    rs = list(range(o)) + list(range(rows - o, rows))
    cs = list(range(o)) + list(range(cols - o, cols))
    return [(i, j) for i in rs for j in cs]


def _corner_patterns(instance: Instance, majority: int, o: int) -> Iterator[Pattern]:
    """Placements putting every non-majority probe into the four o x o corners."""
    cells = [i * instance.cols + j for i, j in _corner_cells(instance.rows, instance.cols, o)]
    others = [(d, k) for d, k in enumerate(instance.multiplicity) if d != majority and k]

    def rec(idx: int, free: list[int], pattern: list[int]) -> Iterator[Pattern]:
        if idx == len(others):
            yield tuple(pattern)
            return
        d, k = others[idx]
        for chosen in itertools.combinations(free, k):
            for c in chosen:
                pattern[c] = d
            rest = [c for c in free if c not in chosen]
            yield from rec(idx + 1, rest, pattern)
            for c in chosen:
                pattern[c] = majority

    yield from rec(0, cells, [majority] * instance.size)


def _best_over_placements(
    instance: Instance,
    patterns: Iterable[Pattern],
    o: int,
    config: SolverConfig,
) -> tuple[Solution | None, int]:
    best: Solution | None = None
    count = 0
    for pat in patterns:
        count += 1
        if count > config.branch_budget:
            raise InstanceTooLarge(f"placement branching exceeded {config.branch_budget} placements")
        placement = placement_from_pattern(instance, pat)
        bound = o if best is None else min(o, best.border_length)
        sol = solve_pbmp_budget(instance, placement, bound, config=config)
        if sol is not None and _better(sol.key(), best.key() if best else None):
            best = sol
    return best, count


def solve_bmp_budget(instance: Instance, o: int, config: SolverConfig | None = None) -> Solution | None:
    """Optimal solution with border length <= ``o`` or ``None``.

    Dispatches on the array shape relative to ``2o``: both sides long
    (majority probe, non-majority probes confined to the corners), one side
    long (template search over primal-derived sequences), or both short
    (all placements).
    """
    config = config or default_config()
    if o < 0:
        raise ValueError("budget must be non-negative")
    if distinct_bound_rejects(instance, o):
        return None
    r, m = instance.rows, instance.cols
    if r > 2 * o and m > 2 * o:
        return _case_both_long(instance, o, config)
    if m > 2 * o or r > 2 * o:
        return _case_one_long(instance, o, config)
    best, count = _best_over_placements(instance, placement_patterns(instance), o, config)
    if best is None:
        return None
    return Solution(instance, best.placement, best.deposition, best.border_length,
                    {"case": "both-short", "placements": count})


def _case_both_long(instance: Instance, o: int, config: SolverConfig) -> Solution | None:
    mult = instance.multiplicity
    majority = max(range(len(mult)), key=lambda d: (mult[d], -d))
    if 2 * mult[majority] <= instance.size:
        return None
    if check_enveloped(instance, o) != instance.distinct[majority]:
        return None
    patterns = (pat for pat in _corner_patterns(instance, majority, o) if flip_canonical(instance, pat))
    best, count = _best_over_placements(instance, patterns, o, config)
    if best is None:
        return None
    return Solution(instance, best.placement, best.deposition, best.border_length,
                    {"case": "both-long", "placements": count, "majority": instance.distinct[majority]})


def _case_one_long(instance: Instance, o: int, config: SolverConfig) -> Solution | None:
    transpose = instance.rows > 2 * o
    work = instance.transposed() if transpose else instance
    sol = _template_search(work, good_depositions_with_short_primal(work, o), config, max_cost=o)
    if sol is None:
        return None
    placement = sol.placement.transpose() if transpose else sol.placement
    placement = placement.canonical(instance)
    bl = compute_bl(instance, placement, sol.deposition, "fast")
    stats = dict(sol.stats, case="one-long", transposed=transpose)
    return Solution(instance, placement, sol.deposition, bl, stats)
