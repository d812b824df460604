"""Search spaces for the exact solvers.

Good deposition sequences are enumerated as paths through frontier states:
one cursor per distinct probe recording how much of it is synthesized.
Under the exhaustive rule a character moves every cursor whose next probe
character matches, so a character is non-redundant exactly when it moves at
least one cursor.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .core import Alphabet, Instance, Placement, check_supersequence
from .errors import NotGood

State = tuple[int, ...]


class Frontier:
    """Transition structure over cursor vectors of the distinct probes."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.probes = instance.distinct
        self.symbols = instance.alphabet.symbols
        self.initial: State = (0,) * len(self.probes)
        self.terminal: State = tuple(len(p) for p in self.probes)

    def moves(self, state: State, x: str) -> list[int]:
        """Distinct ids whose residual probe starts with ``x``."""
        return [d for d, (p, k) in enumerate(zip(self.probes, state)) if k < len(p) and p[k] == x]

    def advance(self, state: State, x: str) -> State | None:
        moved = False
        out = list(state)
        for d, (p, k) in enumerate(zip(self.probes, state)):
            if k < len(p) and p[k] == x:
                out[d] = k + 1
                moved = True
        return tuple(out) if moved else None

    def trivial_char(self, state: State) -> str | None:
        """The character every residual probe starts with, if any."""
        first = None
        for p, k in zip(self.probes, state):
            if k >= len(p):
                return None
            if first is None:
                first = p[k]
            elif p[k] != first:
                return None
        return first

    def is_trivial(self, state: State, x: str) -> bool:
        return self.trivial_char(state) == x

    def close(self, state: State, out: list[str]) -> State:
        """Apply trivial masks until none is applicable."""
        while True:
            x = self.trivial_char(state)
            if x is None:
                return state
            state = self.advance(state, x)
            out.append(x)


def max_good_length(instance: Instance) -> int:
    return sum(len(p) for p in instance.distinct)


def enumerate_good_depositions(instance: Instance, max_len: int | None = None) -> Iterator[str]:
    """Every good deposition sequence of length <= ``max_len``, lexicographically.

    ``max_len`` defaults to the sum of the distinct probe lengths, which no
    good sequence can exceed.
    """
    if max_len is None:
        max_len = max_good_length(instance)
    if max_len < instance.max_len:
        raise ValueError(f"max_len={max_len} is shorter than the longest probe ({instance.max_len})")
    fr = Frontier(instance)
    symbols = fr.symbols
    path: list[str] = []
    stack: list[tuple[State, int]] = [(fr.initial, 0)]
    while stack:
        state, k = stack[-1]
        if state == fr.terminal:
            yield "".join(path)
            stack.pop()
            if stack:
                path.pop()
            continue
        if k == len(symbols) or len(path) >= max_len:
            stack.pop()
            if stack:
                path.pop()
            continue
        stack[-1] = (state, k + 1)
        nxt = fr.advance(state, symbols[k])
        if nxt is not None:
            path.append(symbols[k])
            stack.append((nxt, 0))


def enumerate_primal_sequences(alphabet: Alphabet | Iterable[str], o: int) -> Iterator[str]:
    """All strings of length 0..o over ``alphabet``, shortest first, then lexicographic."""
    if o < 0:
        raise ValueError("o must be non-negative")
    symbols = tuple(alphabet)
    for length in range(o + 1):
        for combo in itertools.product(symbols, repeat=length):
            yield "".join(combo)


def count_primal_sequences(c: int, o: int) -> int:
    return sum(c ** i for i in range(o + 1))


def expand_primal(primal: str, instance: Instance, placement: Placement | None = None) -> str | None:
    """The unique good deposition sequence whose primal sequence is ``primal``.

    Trivial masks are applied greedily (scanning the alphabet in order)
    before each primal character and after the last one.  Returns ``None``
    when a primal character deposits nowhere or a probe is left unfinished.
    """
    if placement is not None:
        placement.check(instance)
    fr = Frontier(instance)
    out: list[str] = []
    state = fr.close(fr.initial, out)
    for x in primal:
        nxt = fr.advance(state, x)
        if nxt is None:
            return None
        out.append(x)
        state = fr.close(nxt, out)
    if state != fr.terminal:
        return None
    return "".join(out)


def primal_of(instance: Instance, placement: Placement | None, deposition: str) -> str:
    """``deposition`` with every trivial-mask character deleted."""
    if placement is not None:
        placement.check(instance)
    check_supersequence(instance, deposition)
    fr = Frontier(instance)
    state = fr.initial
    kept = []
    for h, x in enumerate(deposition):
        nxt = fr.advance(state, x)
        if nxt is None:
            raise NotGood(f"position {h + 1} ({x!r}) of {deposition!r} deposits nowhere")
        if not fr.is_trivial(state, x):
            kept.append(x)
        state = nxt
    return "".join(kept)


def good_depositions_with_short_primal(instance: Instance, o: int) -> Iterator[str]:
    """Good deposition sequences whose primal sequence has length <= ``o``.

    Same set as expanding every output of :func:`enumerate_primal_sequences`,
    but dead primal prefixes are cut as soon as they deposit nowhere.
    Output is lexicographic in the deposition sequence.
    """
    fr = Frontier(instance)

    def rec(state: State, prefix: list[str], used: int) -> Iterator[str]:
        if state == fr.terminal:
            yield "".join(prefix)
            return
        if used == o:
            return
        for x in fr.symbols:
            nxt = fr.advance(state, x)
            if nxt is None:
                continue
            tail = [x]
            nxt = fr.close(nxt, tail)
            yield from rec(nxt, prefix + tail, used + 1)

    start: list[str] = []
    state = fr.close(fr.initial, start)
    yield from rec(state, start, 0)


def column_placements(instance: Instance, as_ids: bool = False) -> list[tuple]:
    """Distinct r-tuples of probes that fit in a single column of the multiset.

    A tuple fits when no probe appears in it more often than in the input.
    Tuples are ordered lexicographically by distinct id (alphabet order).
    """
    mult = instance.multiplicity
    p = len(instance.distinct)
    out = []
    for combo in itertools.product(range(p), repeat=instance.rows):
        demand = [0] * p
        ok = True
        for d in combo:
            demand[d] += 1
            if demand[d] > mult[d]:
                ok = False
                break
        if ok:
            out.append(combo if as_ids else tuple(instance.distinct[d] for d in combo))
    return out
