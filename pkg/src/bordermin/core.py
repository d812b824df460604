"""Instances, placements, exhaustive embeddings, masks and border length.

Everything here is a pure function of immutable values.  A deposition
sequence is a plain ``str``; an embedding is a ``str`` of the same length
over the alphabet plus the gap symbol ``-``.
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    InvalidInstance,
    InvalidPlacement,
    LengthMismatch,
    NotASupersequence,
)

GAP = "-"

Cell = tuple[int, int]


def _check_symbol(ch: str) -> None:
    if not isinstance(ch, str) or len(ch) != 1:
        raise InvalidInstance(f"alphabet symbols must be single characters, got {ch!r}")
    if ch == GAP:
        raise InvalidInstance("'-' is reserved for gaps and cannot be an alphabet symbol")
    # private-use code points are allowed so generators can mint fresh symbols
    if ch == "#" or ch.isspace() or not (ch.isprintable() or unicodedata.category(ch) == "Co"):
        raise InvalidInstance(f"alphabet symbol {ch!r} is not a printable, non-whitespace, non-comment character")


@dataclass(frozen=True)
class Alphabet:
    """Ordered symbol set; the order drives every deterministic tie-break."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise InvalidInstance("alphabet must not be empty")
        for ch in symbols:
            _check_symbol(ch)
        if len(set(symbols)) != len(symbols):
            raise InvalidInstance(f"alphabet has repeated symbols: {''.join(symbols)!r}")

    @classmethod
    def from_probes(cls, probes: Iterable[str]) -> "Alphabet":
        return cls(tuple(sorted(set("".join(probes)))))

    @cached_property
    def _rank(self) -> dict[str, int]:
        return {ch: i for i, ch in enumerate(self.symbols)}

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, ch: object) -> bool:
        return ch in self._rank

    def rank(self, ch: str) -> int:
        # Foreign characters (e.g. in a user-supplied redundant deposition
        # sequence) sort after every member.
        r = self._rank.get(ch)
        return r if r is not None else len(self.symbols) + ord(ch)

    def key(self, seq: str) -> tuple[int, ...]:
        return tuple(self.rank(ch) for ch in seq)

    def __str__(self) -> str:
        return "".join(self.symbols)


@dataclass(frozen=True)
class Instance:
    """A multiset of ``rows * cols`` probes, optionally with a border budget."""

    probes: tuple[str, ...]
    rows: int
    cols: int
    alphabet: Alphabet | None = None
    budget: int | None = None

    def __post_init__(self):
        probes = tuple(self.probes)
        object.__setattr__(self, "probes", probes)
        if self.rows < 1 or self.cols < 1:
            raise InvalidInstance(f"array dimensions must be positive, got {self.rows}x{self.cols}")
        if len(probes) != self.rows * self.cols:
            raise InvalidInstance(
                f"{self.rows}x{self.cols} array needs {self.rows * self.cols} probes, got {len(probes)}"
            )
        for p in probes:
            if not isinstance(p, str) or not p:
                raise InvalidInstance(f"probes must be non-empty strings, got {p!r}")
        alphabet = self.alphabet
        if alphabet is None:
            alphabet = Alphabet.from_probes(probes)
        elif not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        object.__setattr__(self, "alphabet", alphabet)
        for p in probes:
            for ch in p:
                if ch not in alphabet:
                    raise InvalidInstance(f"probe {p!r} uses {ch!r} outside alphabet {str(alphabet)!r}")
        if self.budget is not None and self.budget < 0:
            raise InvalidInstance(f"budget must be non-negative, got {self.budget}")

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[str]], **kwargs) -> tuple["Instance", "Placement"]:
        """Build an instance plus the placement that puts each probe where it is listed."""
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        if any(len(row) != cols for row in grid):
            raise InvalidInstance("grid rows have different lengths")
        probes = tuple(p for row in grid for p in row)
        inst = cls(probes, rows, cols, **kwargs)
        return inst, Placement.identity(rows, cols)

    @property
    def size(self) -> int:
        return self.rows * self.cols

    @property
    def max_len(self) -> int:
        return max(len(p) for p in self.probes)

    @cached_property
    def distinct(self) -> tuple[str, ...]:
        """Distinct probes in alphabet order; their positions are the distinct ids."""
        return tuple(sorted(set(self.probes), key=self.alphabet.key))

    @cached_property
    def distinct_id(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.distinct)}

    @cached_property
    def probe_ids(self) -> tuple[int, ...]:
        """Distinct id of every probe slot."""
        ids = self.distinct_id
        return tuple(ids[p] for p in self.probes)

    @cached_property
    def multiplicity(self) -> tuple[int, ...]:
        counts = Counter(self.probes)
        return tuple(counts[p] for p in self.distinct)

    @cached_property
    def slots_of(self) -> tuple[tuple[int, ...], ...]:
        """Probe slot indices grouped by distinct id, ascending."""
        groups: list[list[int]] = [[] for _ in self.distinct]
        for idx, d in enumerate(self.probe_ids):
            groups[d].append(idx)
        return tuple(tuple(g) for g in groups)

    def transposed(self) -> "Instance":
        return Instance(self.probes, self.cols, self.rows, self.alphabet, self.budget)

    def with_budget(self, budget: int | None) -> "Instance":
        return Instance(self.probes, self.rows, self.cols, self.alphabet, budget)


@dataclass(frozen=True)
class Placement:
    """``grid[i][j]`` is the index (into ``Instance.probes``) of the probe at cell (i, j)."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(int(v) for v in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        if not grid or not grid[0]:
            raise InvalidPlacement("placement grid must be non-empty")
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise InvalidPlacement("placement grid is not rectangular")
        flat = [v for row in grid for v in row]
        if sorted(flat) != list(range(len(flat))):
            raise InvalidPlacement("placement is not a bijection onto the probe slots")

    @classmethod
    def identity(cls, rows: int, cols: int) -> "Placement":
        return cls(tuple(tuple(i * cols + j for j in range(cols)) for i in range(rows)))

    @classmethod
    def from_flat(cls, flat: Sequence[int], rows: int, cols: int) -> "Placement":
        return cls(tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def cols(self) -> int:
        return len(self.grid[0])

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.grid for v in row)

    def key(self) -> tuple[int, ...]:
        return self.flat()

    def check(self, instance: Instance) -> None:
        if (self.rows, self.cols) != (instance.rows, instance.cols):
            raise InvalidPlacement(
                f"placement is {self.rows}x{self.cols} but instance is {instance.rows}x{instance.cols}"
            )

    def flip_h(self) -> "Placement":
        return Placement(tuple(row[::-1] for row in self.grid))

    def flip_v(self) -> "Placement":
        return Placement(self.grid[::-1])

    def transpose(self) -> "Placement":
        return Placement(tuple(zip(*self.grid)))

    def probe_grid(self, instance: Instance) -> tuple[tuple[str, ...], ...]:
        return tuple(tuple(instance.probes[v] for v in row) for row in self.grid)

    def pattern(self, instance: Instance) -> tuple[int, ...]:
        """Row-major distinct ids; equal patterns mean equal placements up to duplicates."""
        ids = instance.probe_ids
        return tuple(ids[v] for v in self.flat())

    def canonical(self, instance: Instance) -> "Placement":
        return placement_from_pattern(instance, self.pattern(instance))


def placement_from_pattern(instance: Instance, pattern: Sequence[int]) -> Placement:
    """Canonical placement for a row-major pattern of distinct ids.

    Identical probes receive their slot indices in ascending row-major order,
    so placements differing only by a permutation of duplicates coincide.
    """
    if len(pattern) != instance.size:
        raise InvalidPlacement(f"pattern has {len(pattern)} cells, expected {instance.size}")
    cursors = [0] * len(instance.distinct)
    slots = instance.slots_of
    flat = []
    for d in pattern:
        if cursors[d] >= len(slots[d]):
            raise InvalidPlacement(f"pattern uses probe {instance.distinct[d]!r} too often")
        flat.append(slots[d][cursors[d]])
        cursors[d] += 1
    return Placement.from_flat(flat, instance.rows, instance.cols)


@lru_cache(maxsize=None)
def neighbor_pairs(rows: int, cols: int) -> tuple[tuple[Cell, Cell], ...]:
    """Each unordered pair of 4-neighbouring cells exactly once."""
    pairs = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                pairs.append(((i, j), (i, j + 1)))
            if i + 1 < rows:
                pairs.append(((i, j), (i + 1, j)))
    return tuple(pairs)


@lru_cache(maxsize=None)
def neighbors(rows: int, cols: int, i: int, j: int) -> tuple[Cell, ...]:
    out = []
    for di, dj in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        a, b = i + di, j + dj
        if 0 <= a < rows and 0 <= b < cols:
            out.append((a, b))
    return tuple(out)


def is_subsequence(probe: str, deposition: str) -> bool:
    it = iter(deposition)
    return all(ch in it for ch in probe)


def embed(probe: str, deposition: str) -> str:
    """Greedy leftmost embedding of ``probe`` into ``deposition``.

    >>> embed("CA", "CTAC")
    'C-A-'
    """
    out = []
    k = 0
    n = len(probe)
    for ch in deposition:
        if k < n and ch == probe[k]:
            out.append(ch)
            k += 1
        else:
            out.append(GAP)
    if k < n:
        raise NotASupersequence(f"{probe!r} is not a subsequence of {deposition!r}")
    return "".join(out)


def embeddings(instance: Instance, deposition: str) -> tuple[str, ...]:
    """Embedding of every distinct probe, indexed by distinct id."""
    return tuple(embed(p, deposition) for p in instance.distinct)


def border_pair(e1: str, e2: str) -> int:
    if len(e1) != len(e2):
        raise LengthMismatch(f"embeddings have lengths {len(e1)} and {len(e2)}")
    return sum(a != b for a, b in zip(e1, e2))


def check_supersequence(instance: Instance, deposition: str) -> None:
    for p in instance.distinct:
        if not is_subsequence(p, deposition):
            raise NotASupersequence(f"{deposition!r} is not a supersequence of probe {p!r}")


@dataclass(frozen=True)
class Mask:
    deposit_char: str
    grid: tuple[tuple[str, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def cols(self) -> int:
        return len(self.grid[0])

    @property
    def border_length(self) -> int:
        x = self.deposit_char
        total = 0
        for (a, b), (c, d) in neighbor_pairs(self.rows, self.cols):
            u, v = self.grid[a][b], self.grid[c][d]
            if u != v and (u == x or v == x):
                total += 1
        return total

    def transparent_cells(self) -> list[Cell]:
        return [(i, j) for i, row in enumerate(self.grid) for j, v in enumerate(row) if v != GAP]

    @property
    def is_trivial(self) -> bool:
        return all(v != GAP for row in self.grid for v in row)

    @property
    def is_empty(self) -> bool:
        return all(v == GAP for row in self.grid for v in row)

    def render(self) -> str:
        return "\n".join("".join(row) for row in self.grid)


def derive_masks(instance: Instance, placement: Placement, deposition: str) -> list[Mask]:
    """Masks induced by the exhaustive rule, recomputed from residual probes.

    A cell is transparent for position i exactly when its residual probe
    starts with ``deposition[i]``; the result is cross-checked against the
    greedy embeddings.
    """
    placement.check(instance)
    check_supersequence(instance, deposition)
    rows, cols = instance.rows, instance.cols
    probes = placement.probe_grid(instance)
    cursor = [[0] * cols for _ in range(rows)]
    masks = []
    for x in deposition:
        grid = []
        for i in range(rows):
            line = []
            for j in range(cols):
                p, k = probes[i][j], cursor[i][j]
                if k < len(p) and p[k] == x:
                    line.append(x)
                    cursor[i][j] = k + 1
                else:
                    line.append(GAP)
            grid.append(tuple(line))
        masks.append(Mask(x, tuple(grid)))
    emb = {p: embed(p, deposition) for p in set(instance.probes)}
    for h, mask in enumerate(masks):
        for i in range(rows):
            for j in range(cols):
                if mask.grid[i][j] != emb[probes[i][j]][h]:
                    raise AssertionError("mask disagrees with the greedy embedding")
    return masks


def _bl_hamming(instance: Instance, placement: Placement, deposition: str) -> int:
    emb = {p: embed(p, deposition) for p in set(instance.probes)}
    probes = placement.probe_grid(instance)
    return sum(
        border_pair(emb[probes[a][b]], emb[probes[c][d]])
        for (a, b), (c, d) in neighbor_pairs(instance.rows, instance.cols)
    )


def _bl_masks(instance: Instance, placement: Placement, deposition: str) -> int:
    return sum(m.border_length for m in derive_masks(instance, placement, deposition))


def _bl_fast(instance: Instance, placement: Placement, deposition: str) -> int:
    # Deduplicate, tabulate pairwise borders of distinct probes, collect
    # neighbour sets, then halve the double-counted sum.
    distinct = instance.distinct
    eta = instance.probe_ids
    emb = embeddings(instance, deposition)
    p = len(distinct)
    table = [[0] * p for _ in range(p)]
    for a in range(p):
        for b in range(a + 1, p):
            table[a][b] = table[b][a] = border_pair(emb[a], emb[b])
    grid = placement.grid
    rows, cols = instance.rows, instance.cols
    total = 0
    for i in range(rows):
        for j in range(cols):
            s = eta[grid[i][j]]
            row = table[s]
            for a, b in neighbors(rows, cols, i, j):
                total += row[eta[grid[a][b]]]
    return total // 2


_METHODS = {"hamming": _bl_hamming, "masks": _bl_masks, "fast": _bl_fast}


def compute_bl(instance: Instance, placement: Placement, deposition: str, method: str = "fast") -> int:
    """Border length of ``(placement, deposition)``.

    ``method`` selects the neighbour-Hamming sum, the per-mask sum, or the
    deduplicated pairwise-table algorithm; all three agree.
    """
    try:
        fn = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {sorted(_METHODS)}") from None
    placement.check(instance)
    check_supersequence(instance, deposition)
    return fn(instance, placement, deposition)


def used_positions(instance: Instance, deposition: str) -> list[bool]:
    check_supersequence(instance, deposition)
    used = [False] * len(deposition)
    for e in embeddings(instance, deposition):
        for h, ch in enumerate(e):
            if ch != GAP:
                used[h] = True
    return used


def strip_redundant(instance: Instance, placement: Placement | None, deposition: str) -> str:
    """Drop every position that deposits into no cell.

    Removing an unused position never changes the greedy choice for any
    probe, so all of them can be removed in one pass.
    """
    if placement is not None:
        placement.check(instance)
    used = used_positions(instance, deposition)
    return "".join(ch for ch, u in zip(deposition, used) if u)


def is_good(instance: Instance, placement: Placement | None, deposition: str) -> bool:
    if placement is not None:
        placement.check(instance)
    return all(used_positions(instance, deposition))


@dataclass(frozen=True)
class Solution:
    instance: Instance
    placement: Placement
    deposition: str
    border_length: int
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def key(self) -> tuple:
        return (
            self.border_length,
            self.instance.alphabet.key(self.deposition),
            self.placement.key(),
        )

    def verify(self) -> bool:
        return compute_bl(self.instance, self.placement, self.deposition, "hamming") == self.border_length

    def masks(self) -> list[Mask]:
        return derive_masks(self.instance, self.placement, self.deposition)
