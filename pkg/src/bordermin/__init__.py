"""Exact solvers for microarray border minimization with exhaustive embeddings."""

from .bmp import solve_bmp_budget, solve_bmp_oracle, solve_bmp_template, make_consecutive
from .config import SolverConfig, default_config
from .core import (
    Alphabet,
    Instance,
    Mask,
    Placement,
    Solution,
    compute_bl,
    derive_masks,
    embed,
    is_good,
    strip_redundant,
)
from .enumeration import enumerate_good_depositions, expand_primal, primal_of
from .errors import BorderMinError
from .fileformat import parse_instance, serialize_instance, verify
from .pbmp import solve_pbmp, solve_pbmp_budget

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "BorderMinError", "Instance", "Mask", "Placement", "Solution", "SolverConfig",
    "compute_bl", "default_config", "derive_masks", "embed", "enumerate_good_depositions",
    "expand_primal", "is_good", "make_consecutive", "parse_instance", "primal_of",
    "serialize_instance", "solve_bmp_budget", "solve_bmp_oracle", "solve_bmp_template",
    "solve_pbmp", "solve_pbmp_budget", "strip_redundant", "verify",
]
