"""Score all 24 placements of the 2x2 a/b grid under its canonical sequence.

Groups placements by their relation to the canonical placement (flip,
transpose of a flip, other) and reports the border length of each group,
so the symmetry group of the optimum can be read off directly.
"""

import argparse
import itertools
import sys

from bordermin.bmp import flips
from bordermin.core import Placement, compute_bl
from bordermin.reductions import SeparatorSpec, build_separator, faithful_u, make_ab_grid


def classify(t: int, u: int | None):
    u = u or faithful_u(2 * t, 2 * t)
    g = make_ab_grid(2, 2, t, build_separator(SeparatorSpec("x", "y", u, 2, 2)))
    flipped = set(flips(g.placement.flat(), 2, 2))
    transposed = {Placement.from_flat(p, 2, 2).transpose().flat() for p in flipped}
    groups: dict[str, list[int]] = {"flip": [], "transpose": [], "other": []}
    for perm in itertools.permutations(range(4)):
        bl = compute_bl(g.instance, Placement.from_flat(perm, 2, 2), g.deposition)
        kind = "flip" if perm in flipped else "transpose" if perm in transposed else "other"
        groups[kind].append(bl)
    return u, compute_bl(g.instance, g.placement, g.deposition), groups


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--u", type=int, default=None, help="separator parameter (default: smallest faithful)")
    args = ap.parse_args(argv)
    print(f"{'t':>2} {'u':>4} {'BL0':>4}  group      count  BL values")
    for t in args.t:
        u, bl0, groups = classify(t, args.u)
        for kind, vals in groups.items():
            print(f"{t:>2} {u:>4} {bl0:>4}  {kind:<10} {len(vals):>5}  {sorted(set(vals))}")
        gap = min(groups["other"]) - bl0
        print(f"   gap to the cheapest non-dihedral placement: {gap} (t = {t})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
