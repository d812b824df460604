"""Minimum balanced cuts of small grids via the single-character BMP encoding.

Compares the cut read off the optimal BMP solution with an independent
brute-force search over balanced partitions.
"""

import argparse
import math
import sys
import time

from bordermin.bmp import solve_bmp_oracle
from bordermin.config import SolverConfig
from bordermin.reductions import GridGraph, brute_force_balanced_cut, extract_partition, reduce_kbp_to_bmp

GRIDS = [(2, 2), (2, 3), (2, 4), (1, 5), (3, 3), (1, 7)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args(argv)
    cfg = SolverConfig(oracle_cap=9)
    print(f"{'grid':>5} {'k':>2} {'BL':>4} {'cut':>4} {'brute':>6} {'sizes':<12} {'cap':>4} {'secs':>6}")
    for r, m in GRIDS:
        for k in args.k:
            g = GridGraph(r, m)
            if k > g.n:
                continue
            start = time.perf_counter()
            sol = solve_bmp_oracle(reduce_kbp_to_bmp(g, k), cfg)
            part = extract_partition(sol, k)
            ref, _ = brute_force_balanced_cut(g, k)
            sizes = sorted(part.sizes().values(), reverse=True)
            flag = "" if part.cut_size == ref else "  <- differs"
            print(f"{r}x{m:<3} {k:>2} {sol.border_length:>4} {part.cut_size:>4} {ref:>6} {str(sizes):<12} "
                  f"{math.ceil(g.n / k):>4} {time.perf_counter() - start:6.2f}{flag}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
