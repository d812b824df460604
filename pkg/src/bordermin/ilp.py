"""Small exact integer program solver over boxed variables.

Depth-first branch and bound: variables are fixed in index order, values
ascending, and a branch is cut when some equality can no longer reach its
right-hand side with the remaining boxes or when the objective cannot beat
the incumbent.  Because values are tried in ascending order, the first
optimum found is the lexicographically smallest one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InstanceTooLarge


@dataclass(frozen=True)
class IntegerProgram:
    """Minimize ``objective . x`` subject to ``A x = b`` and ``lower <= x <= upper``."""

    objective: tuple[int, ...]
    equalities: tuple[tuple[tuple[int, ...], int], ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(int(v) for v in self.objective))
        object.__setattr__(
            self,
            "equalities",
            tuple((tuple(int(v) for v in row), int(rhs)) for row, rhs in self.equalities),
        )
        object.__setattr__(self, "lower", tuple(int(v) for v in self.lower))
        object.__setattr__(self, "upper", tuple(int(v) for v in self.upper))
        p = len(self.objective)
        if len(self.lower) != p or len(self.upper) != p:
            raise ValueError("bounds must have one entry per variable")
        for row, _ in self.equalities:
            if len(row) != p:
                raise ValueError(f"equality row has {len(row)} coefficients, expected {p}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def is_feasible(self, x: Sequence[int]) -> bool:
        if len(x) != self.num_vars:
            return False
        if any(not (lo <= v <= hi) for v, lo, hi in zip(x, self.lower, self.upper)):
            return False
        return all(sum(a * v for a, v in zip(row, x)) == rhs for row, rhs in self.equalities)

    def value(self, x: Sequence[int]) -> int:
        return sum(c * v for c, v in zip(self.objective, x))


@dataclass(frozen=True)
class IlpSolution:
    assignment: tuple[int, ...]
    objective_value: int
    nodes: int = field(default=0, compare=False)


def _suffix_ranges(coeffs: Sequence[int], lower: Sequence[int], upper: Sequence[int]):
    """lo[k], hi[k]: attainable range of sum(coeffs[k:] * x[k:]) over the box."""
    p = len(coeffs)
    lo = [0] * (p + 1)
    hi = [0] * (p + 1)
    for k in range(p - 1, -1, -1):
        a, b = coeffs[k] * lower[k], coeffs[k] * upper[k]
        lo[k] = lo[k + 1] + min(a, b)
        hi[k] = hi[k + 1] + max(a, b)
    return lo, hi


def solve_min(program: IntegerProgram, node_budget: int | None = None) -> IlpSolution | None:
    """Optimal assignment of ``program`` or ``None`` if it is infeasible."""
    p = program.num_vars
    lower, upper = program.lower, program.upper
    if any(lo > hi for lo, hi in zip(lower, upper)):
        return None
    rows = [row for row, _ in program.equalities]
    rhs = [b for _, b in program.equalities]
    eq_ranges = [_suffix_ranges(row, lower, upper) for row in rows]
    obj_lo, _ = _suffix_ranges(program.objective, lower, upper)
    obj = program.objective

    best_val: int | None = None
    best_x: tuple[int, ...] | None = None
    x = [0] * p
    partial = [0] * len(rows)
    nodes = 0

    def feasible_at(k: int) -> bool:
        for e in range(len(rows)):
            need = rhs[e] - partial[e]
            lo, hi = eq_ranges[e]
            if need < lo[k] or need > hi[k]:
                return False
        return True

    def rec(k: int, value: int) -> None:
        nonlocal best_val, best_x, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise InstanceTooLarge(f"integer program search exceeded {node_budget} nodes")
        if best_val is not None and value + obj_lo[k] >= best_val:
            return
        if not feasible_at(k):
            return
        if k == p:
            best_val, best_x = value, tuple(x)
            return
        lo, hi = lower[k], upper[k]
        # Narrow the box of x[k] using every equality where it is the only
        # variable left with a nonzero coefficient.
        for e, row in enumerate(rows):
            a = row[k]
            if a == 0:
                continue
            r_lo, r_hi = eq_ranges[e][0][k + 1], eq_ranges[e][1][k + 1]
            need = rhs[e] - partial[e]
            if r_lo == r_hi:
                rest = need - r_lo
                if rest % a:
                    return
                v = rest // a
                lo, hi = max(lo, v), min(hi, v)
        for v in range(lo, hi + 1):
            x[k] = v
            for e, row in enumerate(rows):
                partial[e] += row[k] * v
            rec(k + 1, value + obj[k] * v)
            for e, row in enumerate(rows):
                partial[e] -= row[k] * v
        x[k] = 0

    rec(0, 0)
    if best_x is None:
        return None
    if not program.is_feasible(best_x):
        raise AssertionError("branch and bound returned an infeasible point")
    return IlpSolution(best_x, best_val, nodes)
