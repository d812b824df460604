"""Acceptance run: one PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) for the summary alone,
or through pytest, where the lines are repeated in the terminal summary.
"""

import itertools
import math
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bordermin.bmp import (  # noqa: E402
    flips,
    is_consecutive,
    make_consecutive,
    solve_bmp_budget,
    solve_bmp_oracle,
    solve_bmp_template,
)
from bordermin.config import SolverConfig  # noqa: E402
from bordermin.core import (  # noqa: E402
    Alphabet,
    Instance,
    Placement,
    compute_bl,
    derive_masks,
    strip_redundant,
)
from bordermin.enumeration import enumerate_good_depositions, expand_primal, primal_of  # noqa: E402
from bordermin.pbmp import (  # noqa: E402
    distinct_bound_rejects,
    solve_pbmp,
    solve_pbmp_bruteforce,
    solve_pbmp_budget,
)
from bordermin.reductions import (  # noqa: E402
    GridGraph,
    SeparatorSpec,
    brute_force_balanced_cut,
    build_separator,
    extract_partition,
    faithful_u,
    make_ab_grid,
    reduce_kbp_to_bmp,
)

from _corpus import bmp_corpus, pbmp_corpus, random_placement  # noqa: E402

RESULTS: dict[int, str] = {}


def random_good(rng, inst):
    """Random interleaving of the distinct probes, then redundant positions removed."""
    cursors = {p: 0 for p in inst.distinct}
    out = []
    while any(cursors[p] < len(p) for p in cursors):
        p = rng.choice([q for q in cursors if cursors[q] < len(q)])
        out.append(p[cursors[p]])
        cursors[p] += 1
    for _ in range(rng.randint(0, 3)):
        out.insert(rng.randint(0, len(out)), rng.choice(inst.alphabet.symbols))
    return strip_redundant(inst, None, "".join(out))


def criterion_1():
    inst = Instance(("CA", "CT", "TA", "AC"), 2, 2, Alphabet(tuple("CTA")))
    place = Placement.identity(2, 2)
    borders = [m.border_length for m in derive_masks(inst, place, "CTAC")]
    totals = {m: compute_bl(inst, place, "CTAC", m) for m in ("hamming", "masks", "fast")}
    ok = borders == [2, 4, 2, 2] and set(totals.values()) == {10}
    return ok, f"mask borders {borders}, totals {totals}"


def criterion_2():
    sol = solve_pbmp(Instance(("a", "b", "a"), 1, 3), Placement.identity(1, 3))
    return sol.border_length == 4, f"BL {sol.border_length}, D {sol.deposition!r}"


def criterion_3():
    rng = random.Random(3)
    shapes = [(r, m) for r in range(1, 10) for m in range(1, 10) if r * m <= 9]
    trials = mismatches = 0
    while trials < 600:
        r, m = rng.choice(shapes)
        c = rng.randint(1, 4)
        l = rng.randint(1, 4)
        alphabet = "ACGT"[:c]
        probes = tuple("".join(rng.choice(alphabet) for _ in range(rng.randint(1, l))) for _ in range(r * m))
        inst = Instance(probes, r, m, Alphabet(tuple(alphabet)))
        place = random_placement(rng, r, m)
        dep = random_good(rng, inst)
        vals = {compute_bl(inst, place, dep, method) for method in ("hamming", "masks", "fast")}
        trials += 1
        mismatches += len(vals) != 1
    return mismatches == 0, f"{trials} triples, {mismatches} disagreements"


def criterion_4():
    corpus = pbmp_corpus()
    bad = [(i.probes, p.grid) for i, p in corpus
           if solve_pbmp(i, p).border_length != solve_pbmp_bruteforce(i, p).border_length]
    return not bad and len(corpus) >= 300, f"{len(corpus)} cases, {len(bad)} mismatches"


def criterion_5():
    corpus = bmp_corpus()
    bad = 0
    for inst in corpus:
        opt = solve_bmp_oracle(inst).border_length
        tpl = solve_bmp_template(inst).border_length
        bud = solve_bmp_budget(inst, opt)
        if tpl != opt or bud is None or bud.border_length != opt:
            bad += 1
    return bad == 0 and len(corpus) >= 200, f"{len(corpus)} instances, {bad} mismatches"


def criterion_6():
    bad = []
    for r, m, t in itertools.product(range(1, 4), range(1, 4), range(1, 4)):
        for u in (1, 2):
            sep = build_separator(SeparatorSpec("x", "y", u, r, m))
            g = make_ab_grid(r, m, t, sep)
            bl = compute_bl(g.instance, g.placement, g.deposition)
            if bl != ((r - 1) * m + r * (m - 1)) * t:
                bad.append((r, m, t, u, bl))
    return not bad, f"54 grids, failures {bad}"


def lemma2_gap(t):
    """(BL0, violators) for the 2x2 a/b grid with the smallest faithful separator."""
    u = faithful_u(2 * t, 2 * t)
    g = make_ab_grid(2, 2, t, build_separator(SeparatorSpec("x", "y", u, 2, 2)))
    bl0 = compute_bl(g.instance, g.placement, g.deposition)
    orbit = set(flips(g.placement.flat(), 2, 2))
    violators = []
    for perm in itertools.permutations(range(4)):
        if perm in orbit:
            continue
        bl = compute_bl(g.instance, Placement.from_flat(perm, 2, 2), g.deposition)
        if bl < bl0 + t:
            violators.append((perm, bl))
    return bl0, violators


def criterion_7():
    details, ok = [], True
    for t in (1, 2):
        bl0, violators = lemma2_gap(t)
        ok &= not violators
        details.append(f"t={t}: BL0={bl0}, {len(violators)} non-flip placements below BL0+t {violators}")
    return ok, "; ".join(details)


def criterion_8():
    corpus = pbmp_corpus()
    bad = checked = prechecked = 0
    for inst, place in corpus:
        opt = solve_pbmp(inst, place).border_length
        for o in (opt - 1, opt, opt + 1):
            if o < 0:
                continue
            checked += 1
            got = solve_pbmp_budget(inst, place, o)
            if (got is not None) != (o >= opt) or (got is not None and got.border_length != opt):
                bad += 1
            if len(inst.distinct) > o + 1 and inst.size > 1:
                prechecked += 1
                # a zero node budget would raise if any search node were visited
                if not distinct_bound_rejects(inst, o) or \
                        solve_pbmp_budget(inst, place, o, config=SolverConfig(node_budget=0)) is not None:
                    bad += 1
    return bad == 0, f"{checked} (instance, o) pairs, {prechecked} rejected by the distinct-probe bound, {bad} failures"


def criterion_9():
    total = bad = 0
    for inst, place in pbmp_corpus():
        for d in enumerate_good_depositions(inst):
            total += 1
            bad += expand_primal(primal_of(inst, place, d), inst, place) != d
    return bad == 0, f"{total} good sequences, {bad} round-trip failures"


def criterion_10():
    rows, bad = [], 0
    for (r, m), k in itertools.product([(2, 2), (2, 3), (2, 4), (1, 5)], (2, 3)):
        g = GridGraph(r, m)
        part = extract_partition(solve_bmp_oracle(reduce_kbp_to_bmp(g, k)), k)
        ref, _ = brute_force_balanced_cut(g, k)
        sizes_ok = max(part.sizes().values()) <= math.ceil(g.n / k)
        bad += part.cut_size != ref or not sizes_ok
        rows.append(f"{r}x{m}/k={k}: {part.cut_size} vs {ref}")
    return bad == 0, ", ".join(rows)


def criterion_11():
    rng = random.Random(11)
    trials = increases = 0
    while trials < 120:
        r, m = rng.choice([(1, 4), (1, 5), (2, 3), (2, 4), (3, 3), (2, 5)])
        kinds = [tuple("".join(rng.choice("AB") for _ in range(rng.randint(1, 2))) for _ in range(r))
                 for _ in range(rng.randint(2, 3))]
        cols = [rng.choice(kinds) for _ in range(m)]
        grid = [[cols[j][i] for j in range(m)] for i in range(r)]
        inst, place = Instance.from_grid(grid, alphabet=Alphabet(("A", "B")))
        if is_consecutive(inst, place):
            continue
        dep = random_good(rng, inst)
        new = make_consecutive(inst, place, dep)
        trials += 1
        increases += compute_bl(inst, new, dep) > compute_bl(inst, place, dep)
    return increases == 0, f"{trials} triples, {increases} increases"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}
LIMITS = {1: 1, 2: 1, 3: 30, 4: 120, 5: 300, 6: 10, 7: 60, 8: None, 9: None, 10: 60, 11: None}


def evaluate(n):
    start = time.perf_counter()
    ok, detail = CRITERIA[n]()
    secs = time.perf_counter() - start
    limit = LIMITS[n]
    if limit is not None and secs >= limit:
        ok = False
        detail += f" (took {secs:.2f}s, limit {limit}s)"
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} [{secs:.2f}s] {detail}"
    RESULTS[n] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("n", range(1, 12))
def test_criterion(n):
    ok, line = evaluate(n)
    assert ok, line


if __name__ == "__main__":
    failed = sum(not evaluate(n)[0] for n in CRITERIA)
    sys.exit(1 if failed else 0)
