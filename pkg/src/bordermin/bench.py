"""Run the solvers over a directory of instance files and tabulate the results."""

from __future__ import annotations

import dataclasses
import multiprocessing as mp
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .bmp import solve_bmp_budget, solve_bmp_oracle, solve_bmp_template
from .config import default_config
from .core import Placement
from .errors import InstanceTooLarge
from .fileformat import parse_instance
from .pbmp import solve_pbmp, solve_pbmp_budget

SOLVERS = ("pbmp", "pbmp-budget", "bmp-oracle", "bmp-template", "bmp-case-split")


def _run_one(path: str, solver: str, node_budget: int | None, queue) -> None:
    parsed = parse_instance(Path(path).read_text(encoding="utf-8"))
    inst = parsed.instance
    placement = parsed.placement or Placement.identity(inst.rows, inst.cols)
    cfg = default_config()
    if node_budget:
        cfg = dataclasses.replace(cfg, node_budget=node_budget, branch_budget=node_budget)
    start = time.perf_counter()
    try:
        if solver == "pbmp":
            sol = solve_pbmp(inst, placement, config=cfg)
        elif solver == "pbmp-budget":
            sol = solve_pbmp_budget(inst, placement, inst.budget, config=cfg)
        elif solver == "bmp-oracle":
            sol = solve_bmp_oracle(inst, config=cfg)
        elif solver == "bmp-template":
            sol = solve_bmp_template(inst, config=cfg)
        else:
            sol = solve_bmp_budget(inst, inst.budget, config=cfg)
    except InstanceTooLarge as exc:
        queue.put({"status": "cap", "detail": str(exc), "seconds": time.perf_counter() - start})
        return
    row = {"status": "solved" if sol else "no-instance", "seconds": time.perf_counter() - start}
    if sol is not None:
        row["border_length"] = sol.border_length
        row["nodes"] = sol.stats.get("nodes")
        row["branches"] = sol.stats.get("branches")
    queue.put(row)


def run_task(path: Path, solver: str, timeout: float, node_budget: int | None = None) -> dict:
    """Run one solver on one file in a child process so it can be killed on timeout."""
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    queue = ctx.Queue()
    proc = ctx.Process(target=_run_one, args=(str(path), solver, node_budget, queue))
    start = time.perf_counter()
    proc.start()
    proc.join(timeout)
    if proc.is_alive():
        proc.terminate()
        proc.join()
        row = {"status": "timeout", "seconds": timeout}
    elif not queue.empty():
        row = queue.get()
    else:
        row = {"status": "error", "seconds": time.perf_counter() - start}
    row.update(file=path.name, solver=solver)
    return row


def _applicable(path: Path) -> list[str]:
    try:
        inst = parse_instance(path.read_text(encoding="utf-8")).instance
    except Exception:
        return []
    out = ["pbmp", "bmp-oracle", "bmp-template"]
    if inst.budget is not None:
        out += ["pbmp-budget", "bmp-case-split"]
    return [s for s in SOLVERS if s in out]


def run_directory(directory: Path, timeout: float = 60.0, threads: int = 1,
                  node_budget: int | None = None) -> list[dict]:
    files = sorted(p for p in directory.iterdir() if p.suffix == ".bmpe")
    tasks = [(p, s) for p in files for s in _applicable(p)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        rows = list(pool.map(lambda task: run_task(task[0], task[1], timeout, node_budget), tasks))
    return rows


def format_table(rows: list[dict]) -> str:
    header = f"{'file':<24} {'solver':<15} {'status':<12} {'BL':>6} {'seconds':>9} {'nodes':>10}"
    lines = [header, "-" * len(header)]
    for r in rows:
        bl = r.get("border_length")
        nodes = r.get("nodes") or r.get("branches")
        lines.append(
            f"{r['file']:<24} {r['solver']:<15} {r['status']:<12} "
            f"{'' if bl is None else bl:>6} {r['seconds']:>9.3f} {'' if nodes is None else nodes:>10}"
        )
    return "\n".join(lines)
