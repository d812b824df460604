"""Instance generators built from the hardness constructions.

* separators ``(x^k y^k)^k`` with ``k = r*m*u`` that force every optimal good
  deposition sequence to split into a prefix part, the separator and a
  suffix part;
* the a/b grid whose probes ``a^(i*t) sep b^(j*t)`` pin down the placement;
* the P-BMP^e -> BMP^e reduction combining both;
* k-Balanced Partition on solid grids as single-character BMP^e instances.
"""

from __future__ import annotations

import itertools
import math
import string
from dataclasses import dataclass, field

from .core import Alphabet, Instance, Placement, Solution, neighbor_pairs
from .errors import AlphabetCollision, InstanceTooLarge, MalformedSolution

# Private-use code points keep generated separator symbols clear of any
# user alphabet.
PRIVATE_BASE = 0xE000
DEFAULT_MAX_LENGTH = 2_000_000


def private_symbols(count: int, avoid: Alphabet | None = None) -> tuple[str, ...]:
    out = []
    cp = PRIVATE_BASE
    while len(out) < count:
        ch = chr(cp)
        if avoid is None or ch not in avoid:
            out.append(ch)
        cp += 1
    return tuple(out)


@dataclass(frozen=True)
class SeparatorSpec:
    x_char: str
    y_char: str
    u: int
    rows: int
    cols: int

    def __post_init__(self):
        if self.x_char == self.y_char:
            raise ValueError("separator needs two different characters")
        if self.u < 1 or self.rows < 1 or self.cols < 1:
            raise ValueError("u, rows and cols must be positive")

    @property
    def run(self) -> int:
        return self.rows * self.cols * self.u

    @property
    def length(self) -> int:
        return 2 * self.run ** 2

    def is_faithful(self, max_pre: int, max_suf: int) -> bool:
        return self.u >= faithful_u(max_pre, max_suf)


def faithful_u(max_pre: int, max_suf: int) -> int:
    """Smallest u for which the separator provably splits optimal sequences."""
    return 8 * max_pre + 8 * max_suf + 1


def build_separator(spec: SeparatorSpec, max_length: int = DEFAULT_MAX_LENGTH) -> str:
    if spec.length > max_length:
        raise InstanceTooLarge(f"separator would have length {spec.length} > {max_length}")
    k = spec.run
    return (spec.x_char * k + spec.y_char * k) * k


@dataclass(frozen=True)
class ABGrid:
    instance: Instance
    placement: Placement
    deposition: str
    t: int

    @property
    def expected_border(self) -> int:
        r, m = self.instance.rows, self.instance.cols
        return ((r - 1) * m + r * (m - 1)) * self.t


def make_ab_grid(r: int, m: int, t: int, sep: str, a: str = "a", b: str = "b") -> ABGrid:
    """Probes ``a^(i*t) sep b^(j*t)`` at cell (i, j), with the canonical solution.

    The returned placement puts each probe at its own (i, j) and the returned
    deposition sequence is ``a^(r*t) sep b^(m*t)``.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if a == b or a in sep or b in sep:
        raise AlphabetCollision("a and b must be distinct and absent from the separator")
    grid = [[a * (i * t) + sep + b * (j * t) for j in range(1, m + 1)] for i in range(1, r + 1)]
    symbols = [a] + sorted(set(sep)) + [b]
    instance, placement = Instance.from_grid(grid, alphabet=Alphabet(tuple(symbols)))
    deposition = a * (r * t) + sep + b * (m * t)
    return ABGrid(instance, placement, deposition, t)


@dataclass(frozen=True)
class ReductionConstants:
    t: int
    u1: int
    u2: int

    def lengths(self, instance: Instance) -> dict[str, int]:
        rm = instance.rows * instance.cols
        sep1 = 2 * (rm * self.u1) ** 2
        sep2 = 2 * (rm * self.u2) ** 2
        longest = (instance.rows + instance.cols) * self.t + sep1 + sep2 + instance.max_len
        return {"sep1": sep1, "sep2": sep2, "longest_probe": longest}


def faithful_constants(instance: Instance) -> ReductionConstants:
    """Smallest integers satisfying t > (l*r*m)^2, u2 > 100 t^3, u1 > 1000 t^4."""
    t = (instance.max_len * instance.rows * instance.cols) ** 2 + 1
    return ReductionConstants(t=t, u1=1000 * t ** 4 + 1, u2=100 * t ** 3 + 1)


@dataclass(frozen=True)
class Reduction:
    instance: Instance
    placement: Placement
    constants: ReductionConstants
    guaranteed: bool
    symbols: dict = field(default_factory=dict)


def reduce_pbmp_to_bmp(
    instance: Instance,
    placement: Placement,
    mode: str = "desk",
    *,
    t: int = 1,
    u1: int = 1,
    u2: int = 1,
    fresh: tuple[str, str, str, str, str, str] | None = None,
    max_length: int = DEFAULT_MAX_LENGTH,
) -> Reduction:
    """BMP^e instance whose optimal placements reproduce ``placement``.

    The probe at cell (i, j) becomes ``a^(i*t) sep1 b^(j*t) sep2 s``.  In
    ``"faithful"`` mode the constants are the ones that make the guarantee
    hold (and the instance is almost always too large to build); in
    ``"desk"`` mode the caller's constants are used and ``guaranteed`` is
    False.  ``fresh`` supplies the six new symbols (a, b, x1, y1, x2, y2).
    """
    placement.check(instance)
    if mode == "faithful":
        consts = faithful_constants(instance)
    elif mode == "desk":
        if min(t, u1, u2) < 1:
            raise ValueError("t, u1 and u2 must be positive")
        consts = ReductionConstants(t, u1, u2)
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'faithful' or 'desk'")
    if fresh is None:
        fresh = private_symbols(6, instance.alphabet)
    if len(set(fresh)) != 6:
        raise AlphabetCollision("the six fresh symbols must be pairwise different")
    clash = [ch for ch in fresh if ch in instance.alphabet]
    if clash:
        raise AlphabetCollision(f"fresh symbols {clash!r} already belong to the input alphabet")
    lengths = consts.lengths(instance)
    if lengths["longest_probe"] > max_length:
        raise InstanceTooLarge(
            f"reduced probes would reach length {lengths['longest_probe']} > {max_length}"
        )
    a, b, x1, y1, x2, y2 = fresh
    r, m = instance.rows, instance.cols
    sep1 = build_separator(SeparatorSpec(x1, y1, consts.u1, r, m), max_length)
    sep2 = build_separator(SeparatorSpec(x2, y2, consts.u2, r, m), max_length)
    t = consts.t
    probes = []
    for i in range(r):
        for j in range(m):
            s = instance.probes[placement.grid[i][j]]
            probes.append(a * ((i + 1) * t) + sep1 + b * ((j + 1) * t) + sep2 + s)
    symbols = (a, x1, y1, b, x2, y2) + instance.alphabet.symbols
    reduced = Instance(tuple(probes), r, m, Alphabet(symbols))
    return Reduction(
        reduced,
        Placement.identity(r, m),
        consts,
        guaranteed=(mode == "faithful"),
        symbols={"a": a, "b": b, "x1": x1, "y1": y1, "x2": x2, "y2": y2},
    )


# -- k-Balanced Partition -------------------------------------------------------

KBP_SYMBOLS = string.ascii_uppercase + string.ascii_lowercase + string.digits


@dataclass(frozen=True)
class GridGraph:
    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid dimensions must be positive")

    @property
    def n(self) -> int:
        return self.rows * self.cols

    def edges(self) -> list[tuple[int, int]]:
        c = self.cols
        return [(a * c + b, x * c + y) for (a, b), (x, y) in neighbor_pairs(self.rows, self.cols)]


def kbp_class_sizes(n: int, k: int) -> list[int]:
    l, x = divmod(n, k)
    return [l + 1 if i < x else l for i in range(k)]


def reduce_kbp_to_bmp(grid: GridGraph, k: int, symbols: str = KBP_SYMBOLS) -> Instance:
    """Single-character probes, ``l+1`` copies of the first ``x`` symbols and ``l`` of the rest."""
    if not 1 <= k <= grid.n:
        raise ValueError(f"k must be between 1 and {grid.n}")
    if k > len(symbols):
        raise ValueError(f"only {len(symbols)} symbols available for k={k}")
    probes = []
    for ch, size in zip(symbols[:k], kbp_class_sizes(grid.n, k)):
        probes.extend(ch * size)
    return Instance(tuple(probes), grid.rows, grid.cols, Alphabet(tuple(symbols[:k])))


@dataclass(frozen=True)
class Partition:
    classes: dict
    cut_size: int

    def sizes(self) -> dict:
        return {label: len(cells) for label, cells in self.classes.items()}


def cut_of(rows: int, cols: int, labels) -> int:
    return sum(labels[a][b] != labels[c][d] for (a, b), (c, d) in neighbor_pairs(rows, cols))


def extract_partition(solution: Solution, k: int) -> Partition:
    """Partition classes = cells grouped by placed character; cut = border / 2."""
    inst = solution.instance
    if any(len(p) != 1 for p in inst.probes):
        raise MalformedSolution("partition extraction needs single-character probes")
    if len(inst.distinct) > k:
        raise MalformedSolution(f"solution uses {len(inst.distinct)} characters, more than k={k}")
    grid = solution.placement.probe_grid(inst)
    classes: dict[str, list[tuple[int, int]]] = {}
    for i, row in enumerate(grid):
        for j, ch in enumerate(row):
            classes.setdefault(ch, []).append((i, j))
    cut = cut_of(inst.rows, inst.cols, grid)
    if solution.border_length != 2 * cut:
        raise MalformedSolution(f"border length {solution.border_length} is not twice the cut {cut}")
    return Partition(dict(sorted(classes.items())), cut)


def brute_force_balanced_cut(grid: GridGraph, k: int) -> tuple[int, tuple[int, ...]]:
    """Minimum cut over partitions into k non-empty classes of size <= ceil(n/k).

    Enumerates labelings in restricted-growth form (class labels appear in
    first-use order) so each partition is visited once.
    """
    n = grid.n
    cap = math.ceil(n / k)
    edges = grid.edges()
    best = None
    labels = [0] * n
    sizes = [0] * k

    def rec(i: int, used: int) -> None:
        nonlocal best
        if n - i < k - used:
            return
        if i == n:
            cut = sum(labels[a] != labels[b] for a, b in edges)
            if best is None or cut < best[0]:
                best = (cut, tuple(labels))
            return
        for lab in range(min(used + 1, k)):
            if sizes[lab] == cap:
                continue
            labels[i] = lab
            sizes[lab] += 1
            rec(i + 1, max(used, lab + 1))
            sizes[lab] -= 1

    rec(0, 0)
    if best is None:
        raise ValueError(f"no balanced partition of {n} vertices into {k} classes")
    return best


def all_balanced_labelings(grid: GridGraph, k: int):
    """Every labeling with non-empty classes of size <= ceil(n/k) (for cross-checks)."""
    n = grid.n
    cap = math.ceil(n / k)
    for labels in itertools.product(range(k), repeat=n):
        counts = [labels.count(c) for c in range(k)]
        if min(counts) > 0 and max(counts) <= cap:
            yield labels
