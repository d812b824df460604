"""Command line front end.

Exit status: 0 solved / PASS, 1 certified no-instance / FAIL, 2 error,
3 search cap exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys
from pathlib import Path

from . import bench
from .bmp import solve_bmp_budget, solve_bmp_oracle, solve_bmp_template
from .config import SolverConfig, default_config
from .core import Alphabet, Instance, Placement, Solution
from .errors import BorderMinError, InstanceTooLarge
from .fileformat import (
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
    verify,
)
from .pbmp import solve_pbmp, solve_pbmp_budget
from .reductions import (
    GridGraph,
    SeparatorSpec,
    build_separator,
    faithful_u,
    make_ab_grid,
    reduce_kbp_to_bmp,
    reduce_pbmp_to_bmp,
)

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_CAP = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _config(args) -> SolverConfig:
    cfg = default_config()
    if getattr(args, "node_budget", None):
        cfg = dataclasses.replace(cfg, node_budget=args.node_budget, branch_budget=args.node_budget)
    if getattr(args, "oracle_cap", None):
        cfg = dataclasses.replace(cfg, oracle_cap=args.oracle_cap)
    return cfg


def solution_dict(sol: Solution, solver: str) -> dict:
    inst = sol.instance
    return {
        "solver": solver,
        "rows": inst.rows,
        "cols": inst.cols,
        "border_length": sol.border_length,
        "deposition": sol.deposition,
        "placement": [list(row) for row in sol.placement.grid],
        "probe_grid": [list(row) for row in sol.placement.probe_grid(inst)],
        "stats": {k: sol.stats[k] for k in sorted(sol.stats)},
    }


def _emit_solution(sol: Solution | None, solver: str, args, budget: int | None) -> int:
    if sol is None:
        if args.json:
            print(json.dumps({"solver": solver, "status": "no-instance", "budget": budget}, sort_keys=True))
        else:
            print(f"no solution with border length <= {budget}")
        return EXIT_NO
    if args.output:
        Path(args.output).write_text(serialize_solution(sol), encoding="utf-8")
    if args.json:
        data = solution_dict(sol, solver)
        data["status"] = "solved"
        print(json.dumps(data, sort_keys=True, default=list))
    else:
        print(f"border_length: {sol.border_length}")
        print(f"deposition: {sol.deposition}")
        print("placement:")
        for row in sol.placement.probe_grid(sol.instance):
            print("  " + " ".join(row))
    if args.dump_masks:
        for h, mask in enumerate(sol.masks(), start=1):
            print(f"mask {h} ({mask.deposit_char}) border {mask.border_length}")
            print(mask.render())
    return EXIT_OK


def cmd_solve_pbmp(args) -> int:
    parsed = parse_instance(_read(args.file))
    inst = parsed.instance
    placement = parsed.placement or Placement.identity(inst.rows, inst.cols)
    budget = args.budget if args.budget is not None else inst.budget
    cfg = _config(args)
    if budget is None:
        sol = solve_pbmp(inst, placement, config=cfg)
    else:
        sol = solve_pbmp_budget(inst, placement, budget, exhaustive=args.exhaustive, config=cfg)
    return _emit_solution(sol, "pbmp" if budget is None else "pbmp-budget", args, budget)


def cmd_solve_bmp(args) -> int:
    inst = parse_instance(_read(args.file)).instance
    budget = args.budget if args.budget is not None else inst.budget
    algo = args.algo or ("case-split" if budget is not None else "template")
    cfg = _config(args)
    if algo == "case-split":
        if budget is None:
            raise BorderMinError("--algo case-split needs a budget (--budget or a budget line)")
        sol = solve_bmp_budget(inst, budget, config=cfg)
    elif algo == "oracle":
        sol = solve_bmp_oracle(inst, config=cfg)
    else:
        sol = solve_bmp_template(inst, config=cfg)
    if sol is not None and budget is not None and sol.border_length > budget:
        sol = None
    return _emit_solution(sol, algo, args, budget)


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.file)).instance
    claim = parse_solution(_read(args.solution))
    report = verify(inst, claim.placement, claim.deposition, claim.border_length)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print(report.status)
        if report.bl_hamming is not None:
            print(f"recomputed: hamming {report.bl_hamming}, masks {report.bl_masks}; claimed {report.claimed}")
        for msg in report.messages:
            print(msg)
    return EXIT_OK if report.passed else EXIT_NO


def _random_instance(rows: int, cols: int, c: int, length: int, rng: random.Random) -> Instance:
    symbols = "ACGT" if c <= 4 else "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if c > len(symbols):
        raise BorderMinError(f"at most {len(symbols)} symbols supported")
    alphabet = symbols[:c]
    probes = tuple(
        "".join(rng.choice(alphabet) for _ in range(rng.randint(1, length))) for _ in range(rows * cols)
    )
    return Instance(probes, rows, cols, Alphabet(tuple(alphabet)))


def cmd_gen(args) -> int:
    placement = None
    if args.kind == "random":
        rng = random.Random(args.seed)
        inst = _random_instance(args.rows, args.cols, args.c, args.l, rng)
        if args.shuffle_placement:
            flat = list(range(inst.size))
            rng.shuffle(flat)
            placement = Placement.from_flat(flat, inst.rows, inst.cols)
        if args.budget is not None:
            inst = inst.with_budget(args.budget)
    elif args.kind == "ab-grid":
        t = args.t
        u = faithful_u(args.rows * t, args.cols * t) if args.faithful else args.u
        sep = build_separator(SeparatorSpec("x", "y", u, args.rows, args.cols))
        grid = make_ab_grid(args.rows, args.cols, t, sep)
        inst, placement = grid.instance, grid.placement
    elif args.kind == "kbp":
        inst = reduce_kbp_to_bmp(GridGraph(args.rows, args.cols), args.k)
    elif args.kind == "pbmp2bmp":
        parsed = parse_instance(_read(args.file))
        source = parsed.instance
        src_placement = parsed.placement or Placement.identity(source.rows, source.cols)
        fresh = tuple(args.fresh) if args.fresh else None
        red = reduce_pbmp_to_bmp(
            source, src_placement, "faithful" if args.faithful else "desk",
            t=args.t, u1=args.u1, u2=args.u2, fresh=fresh,
        )
        inst, placement = red.instance, red.placement
        if not red.guaranteed:
            print("# desk-scale constants: placement recovery is not guaranteed", file=sys.stderr)
    else:  # pragma: no cover - argparse restricts choices
        raise BorderMinError(f"unknown generator {args.kind!r}")
    text = serialize_instance(inst, placement)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = bench.run_directory(Path(args.directory), timeout=args.timeout, threads=args.threads,
                               node_budget=args.node_budget)
    if args.json:
        print(json.dumps(rows, sort_keys=True, indent=1))
    else:
        print(bench.format_table(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bordermin", description="Exact border minimization for microarrays.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, solve=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--node-budget", type=int, default=None, help="search cap (default from BORDERMIN_NODE_BUDGET)")
        p.add_argument("--threads", type=int, default=1, help="worker count (results do not depend on it)")
        if solve:
            p.add_argument("--dump-masks", action="store_true", help="print every mask as ASCII art")
            p.add_argument("-o", "--output", help="also write a solution file")

    p = sub.add_parser("solve-pbmp", help="optimal deposition sequence for a given placement")
    p.add_argument("file", help="instance file or - for stdin")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--exhaustive", action="store_true", help="expand every primal sequence literally")
    common(p)
    p.set_defaults(func=cmd_solve_pbmp)

    p = sub.add_parser("solve-bmp", help="optimal placement and deposition sequence")
    p.add_argument("file", help="instance file or - for stdin")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--algo", choices=("oracle", "template", "case-split"), default=None)
    p.add_argument("--oracle-cap", type=int, default=None, help="largest r*m the oracle accepts")
    common(p)
    p.set_defaults(func=cmd_solve_bmp)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("file")
    p.add_argument("solution")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="instance generators")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("random")
    g.add_argument("rows", type=int)
    g.add_argument("cols", type=int)
    g.add_argument("--c", type=int, default=2, help="alphabet size")
    g.add_argument("--l", type=int, default=2, help="maximum probe length")
    g.add_argument("--budget", type=int, default=None)
    g.add_argument("--shuffle-placement", action="store_true", help="emit a random placement section")
    g = gsub.add_parser("ab-grid")
    g.add_argument("rows", type=int)
    g.add_argument("cols", type=int)
    g.add_argument("--t", type=int, default=1)
    g.add_argument("--u", type=int, default=1)
    g.add_argument("--faithful", action="store_true", help="use the smallest separator u with the guarantee")
    g = gsub.add_parser("kbp")
    g.add_argument("rows", type=int)
    g.add_argument("cols", type=int)
    g.add_argument("--k", type=int, required=True)
    g = gsub.add_parser("pbmp2bmp")
    g.add_argument("file")
    g.add_argument("--t", type=int, default=1)
    g.add_argument("--u1", type=int, default=1)
    g.add_argument("--u2", type=int, default=1)
    g.add_argument("--faithful", action="store_true")
    g.add_argument("--fresh", help="six new symbols a,b,x1,y1,x2,y2 (default: private-use code points)")
    for g in gsub.choices.values():
        g.add_argument("--seed", type=int, default=0)
        g.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run every solver on every instance file in a directory")
    p.add_argument("directory")
    p.add_argument("--timeout", type=float, default=60.0, help="seconds per solver run")
    common(p, solve=False)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (BorderMinError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
