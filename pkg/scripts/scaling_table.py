"""Observed runtime and search effort of every solver on random instances.

Not an acceptance check: the asymptotic bounds are not reproducible as
numbers, so this only records how the searches grow on this machine.

    python3 scripts/scaling_table.py --seeds 3 --csv scaling.csv
"""

import argparse
import csv
import random
import statistics
import sys
import time

from bordermin.bmp import solve_bmp_budget, solve_bmp_oracle, solve_bmp_template
from bordermin.config import SolverConfig
from bordermin.core import Alphabet, Instance, Placement
from bordermin.errors import InstanceTooLarge
from bordermin.pbmp import solve_pbmp, solve_pbmp_budget

SHAPES = [(1, 3), (1, 5), (1, 7), (2, 2), (2, 3), (2, 4), (2, 5), (3, 3)]


def random_instance(rng, rows, cols, c, l):
    alphabet = "ACGT"[:c]
    probes = tuple("".join(rng.choice(alphabet) for _ in range(rng.randint(1, l))) for _ in range(rows * cols))
    return Instance(probes, rows, cols, Alphabet(tuple(alphabet)))


def timed(fn):
    start = time.perf_counter()
    try:
        sol = fn()
    except InstanceTooLarge:
        return None, time.perf_counter() - start, "cap"
    return sol, time.perf_counter() - start, "ok"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--c", type=int, default=2)
    ap.add_argument("--l", type=int, default=2)
    ap.add_argument("--csv", help="also write raw rows here")
    ap.add_argument("--cap", type=int, default=200_000, help="node/branch cap per run; capped runs are reported, not waited for")
    args = ap.parse_args(argv)

    cfg = SolverConfig(node_budget=args.cap, branch_budget=args.cap)
    rows = []
    for r, m in SHAPES:
        for seed in range(args.seeds):
            rng = random.Random(1000 * r + 10 * m + seed)
            inst = random_instance(rng, r, m, args.c, args.l)
            place = Placement.identity(r, m)
            pb, t_pb, _ = timed(lambda: solve_pbmp(inst, place, cfg))
            o = pb.border_length
            print(f"{r}x{m} seed {seed}", file=sys.stderr, flush=True)
            runs = {
                "pbmp": (pb, t_pb, "ok"),
                "pbmp-budget": timed(lambda: solve_pbmp_budget(inst, place, o, config=cfg)),
                "bmp-template": timed(lambda: solve_bmp_template(inst, cfg)),
            }
            if r * m <= 8:
                runs["bmp-oracle"] = timed(lambda: solve_bmp_oracle(inst, cfg))
            opt = runs["bmp-template"][0]
            if opt is not None:
                runs["bmp-case-split"] = timed(lambda: solve_bmp_budget(inst, opt.border_length, cfg))
            for name, (sol, secs, status) in runs.items():
                effort = None
                if sol is not None:
                    effort = sol.stats.get("nodes") or sol.stats.get("branches") or sol.stats.get("placements")
                rows.append({
                    "shape": f"{r}x{m}", "seed": seed, "solver": name, "status": status,
                    "bl": None if sol is None else sol.border_length, "seconds": round(secs, 4), "effort": effort,
                })

    print(f"{'shape':>6} {'solver':<15} {'median s':>9} {'max s':>8} {'median effort':>14} {'capped':>7}")
    keys = sorted({(row["shape"], row["solver"]) for row in rows}, key=lambda k: (SHAPES.index(tuple(map(int, k[0].split("x")))), k[1]))
    for shape, solver in keys:
        sel = [row for row in rows if row["shape"] == shape and row["solver"] == solver]
        secs = [row["seconds"] for row in sel]
        eff = [row["effort"] for row in sel if row["effort"] is not None]
        print(f"{shape:>6} {solver:<15} {statistics.median(secs):9.4f} {max(secs):8.4f} "
              f"{statistics.median(eff) if eff else '-':>14} {sum(row['status'] == 'cap' for row in sel):>7}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
