"""Search caps shared by the exact solvers."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

ENV_NODE_BUDGET = "BORDERMIN_NODE_BUDGET"
DEFAULT_NODE_BUDGET = 10_000_000


def _env_node_budget() -> int:
    raw = os.environ.get(ENV_NODE_BUDGET)
    if raw is None or raw.strip() == "":
        return DEFAULT_NODE_BUDGET
    value = int(raw)
    if value < 1:
        raise ValueError(f"{ENV_NODE_BUDGET} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class SolverConfig:
    """Caps that make the exponential searches fail loudly instead of hanging.

    ``node_budget`` bounds DFS nodes in the deposition-sequence searches,
    ``branch_budget`` bounds templates/placements examined by the BMP
    solvers, and ``oracle_cap`` bounds r*m for the exhaustive BMP oracle.
    """

    node_budget: int = field(default_factory=_env_node_budget)
    branch_budget: int = field(default_factory=_env_node_budget)
    oracle_cap: int = 8


def default_config() -> SolverConfig:
    # Re-read the environment on every call so tests can monkeypatch it.
    return SolverConfig()
