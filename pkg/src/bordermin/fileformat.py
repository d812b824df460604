"""Plain-text instance and solution files, plus solution verification.

Instance file::

    # comments run to end of line
    BMPE 1
    2 2 ACT          # rows, cols, optional alphabet (in tie-break order)
    CA CT            # r*m probes, whitespace separated, row-major
    TA AC
    placement        # optional: r lines of m probe indices (0-based)
    0 1
    2 3
    budget 10        # optional

Solution file::

    BMPE-SOLUTION 1
    deposition CTAC
    border_length 10
    placement
    0 1
    2 3
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Alphabet,
    Instance,
    Placement,
    Solution,
    compute_bl,
    is_good,
    is_subsequence,
)
from .errors import (
    AlphabetViolation,
    BorderMinError,
    CountMismatch,
    InstanceSyntaxError,
    InvalidInstance,
    InvalidPlacement,
)

INSTANCE_MAGIC = "BMPE"
SOLUTION_MAGIC = "BMPE-SOLUTION"
FORMAT_VERSION = "1"


@dataclass(frozen=True)
class InstanceFile:
    instance: Instance
    placement: Placement | None = None

    @property
    def budget(self) -> int | None:
        return self.instance.budget


def _tokens(text: str):
    """(line_no, column, token) for every token, comments removed."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            yield ln, col + 1, tok
            col += len(tok)


def _lines(text: str):
    """(line_no, [(column, token), ...]) for every non-empty line."""
    current, out = None, []
    for ln, col, tok in _tokens(text):
        if ln != current:
            out.append((ln, []))
            current = ln
        out[-1][1].append((col, tok))
    return out


def _int(tok: str, ln: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceSyntaxError(f"expected integer {what}, got {tok!r}", ln, col) from None


def _read_grid(lines, idx: int, rows: int | None, cols: int | None):
    grid = []
    while idx < len(lines):
        ln, toks = lines[idx]
        if not toks[0][1].lstrip("-").isdigit():
            break
        row = [_int(t, ln, c, "placement index") for c, t in toks]
        if cols is not None and len(row) != cols:
            raise InstanceSyntaxError(f"placement row has {len(row)} entries, expected {cols}", ln, 1)
        grid.append(tuple(row))
        idx += 1
        if rows is not None and len(grid) == rows:
            break
    return grid, idx


def parse_instance(text: str) -> InstanceFile:
    lines = _lines(text)
    if not lines:
        raise InstanceSyntaxError("empty instance file", 1, 1)
    ln, toks = lines[0]
    if [t for _, t in toks] != [INSTANCE_MAGIC, FORMAT_VERSION]:
        raise InstanceSyntaxError(f"expected header '{INSTANCE_MAGIC} {FORMAT_VERSION}'", ln, 1)
    if len(lines) < 2:
        raise InstanceSyntaxError("missing dimension line", ln + 1, 1)
    ln, toks = lines[1]
    if len(toks) not in (2, 3):
        raise InstanceSyntaxError("dimension line must be 'rows cols [alphabet]'", ln, 1)
    rows = _int(toks[0][1], ln, toks[0][0], "rows")
    cols = _int(toks[1][1], ln, toks[1][0], "cols")
    if rows < 1 or cols < 1:
        raise InstanceSyntaxError("rows and cols must be positive", ln, toks[0][0])
    alphabet = None
    if len(toks) == 3:
        col, sym = toks[2]
        try:
            alphabet = Alphabet(tuple(sym))
        except InvalidInstance as exc:
            raise InstanceSyntaxError(str(exc), ln, col) from None
    need = rows * cols
    probes: list[str] = []
    idx = 2
    while idx < len(lines) and len(probes) < need:
        ln, toks = lines[idx]
        for col, tok in toks:
            if len(probes) == need:
                raise CountMismatch(f"more than {need} probes for a {rows}x{cols} array", ln, col)
            if alphabet is not None:
                for k, ch in enumerate(tok):
                    if ch not in alphabet:
                        raise AlphabetViolation(
                            f"character {ch!r} of probe {tok!r} is not in alphabet {str(alphabet)!r}",
                            ln, col + k,
                        )
            if "-" in tok:
                raise AlphabetViolation("'-' is reserved for gaps", ln, col + tok.index("-"))
            probes.append(tok)
        idx += 1
    if len(probes) != need:
        last = lines[-1][0] if lines else 1
        raise CountMismatch(f"{rows}x{cols} array needs {need} probes, found {len(probes)}", last)
    placement = None
    budget = None
    while idx < len(lines):
        ln, toks = lines[idx]
        col, kw = toks[0]
        if kw == "placement":
            if len(toks) != 1:
                raise InstanceSyntaxError("'placement' takes no arguments", ln, toks[1][0])
            if placement is not None:
                raise InstanceSyntaxError("duplicate placement section", ln, col)
            grid, idx = _read_grid(lines, idx + 1, rows, cols)
            if len(grid) != rows:
                raise InstanceSyntaxError(f"placement needs {rows} rows, found {len(grid)}", ln, col)
            try:
                placement = Placement(tuple(grid))
            except InvalidPlacement as exc:
                raise InstanceSyntaxError(str(exc), ln, col) from None
            continue
        if kw == "budget":
            if len(toks) != 2:
                raise InstanceSyntaxError("budget line must be 'budget N'", ln, col)
            if budget is not None:
                raise InstanceSyntaxError("duplicate budget line", ln, col)
            budget = _int(toks[1][1], ln, toks[1][0], "budget")
            if budget < 0:
                raise InstanceSyntaxError("budget must be non-negative", ln, toks[1][0])
            idx += 1
            continue
        if placement is None and budget is None:
            raise CountMismatch(f"unexpected token {kw!r} after {need} probes", ln, col)
        raise InstanceSyntaxError(f"unexpected token {kw!r}", ln, col)
    try:
        instance = Instance(tuple(probes), rows, cols, alphabet, budget)
    except InvalidInstance as exc:
        raise InstanceSyntaxError(str(exc)) from None
    return InstanceFile(instance, placement)


def serialize_instance(instance: Instance, placement: Placement | None = None) -> str:
    out = [f"{INSTANCE_MAGIC} {FORMAT_VERSION}", f"{instance.rows} {instance.cols} {instance.alphabet}"]
    for i in range(instance.rows):
        out.append(" ".join(instance.probes[i * instance.cols:(i + 1) * instance.cols]))
    if placement is not None:
        out.append("placement")
        out.extend(" ".join(str(v) for v in row) for row in placement.grid)
    if instance.budget is not None:
        out.append(f"budget {instance.budget}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class SolutionFile:
    deposition: str
    placement: Placement
    border_length: int


def parse_solution(text: str) -> SolutionFile:
    lines = _lines(text)
    if not lines or [t for _, t in lines[0][1]] != [SOLUTION_MAGIC, FORMAT_VERSION]:
        raise InstanceSyntaxError(f"expected header '{SOLUTION_MAGIC} {FORMAT_VERSION}'", 1, 1)
    deposition = bl = placement = None
    idx = 1
    while idx < len(lines):
        ln, toks = lines[idx]
        col, kw = toks[0]
        if kw == "deposition":
            deposition = toks[1][1] if len(toks) == 2 else ""
            if len(toks) > 2:
                raise InstanceSyntaxError("deposition line must hold one token", ln, toks[2][0])
            idx += 1
        elif kw == "border_length":
            if len(toks) != 2:
                raise InstanceSyntaxError("border_length line must be 'border_length N'", ln, col)
            bl = _int(toks[1][1], ln, toks[1][0], "border length")
            idx += 1
        elif kw == "placement":
            grid, idx = _read_grid(lines, idx + 1, None, None)
            try:
                placement = Placement(tuple(grid))
            except InvalidPlacement as exc:
                raise InstanceSyntaxError(str(exc), ln, col) from None
        else:
            raise InstanceSyntaxError(f"unexpected token {kw!r}", ln, col)
    for name, value in (("deposition", deposition), ("border_length", bl), ("placement", placement)):
        if value is None:
            raise InstanceSyntaxError(f"solution file lacks a {name} entry")
    return SolutionFile(deposition, placement, bl)


def serialize_solution(solution: Solution) -> str:
    out = [
        f"{SOLUTION_MAGIC} {FORMAT_VERSION}",
        f"deposition {solution.deposition}",
        f"border_length {solution.border_length}",
        "placement",
    ]
    out.extend(" ".join(str(v) for v in row) for row in solution.placement.grid)
    return "\n".join(out) + "\n"


@dataclass
class VerifyReport:
    passed: bool
    claimed: int
    supersequence: bool
    good: bool | None = None
    bl_hamming: int | None = None
    bl_masks: int | None = None
    messages: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "claimed": self.claimed,
            "supersequence": self.supersequence,
            "good": self.good,
            "bl_hamming": self.bl_hamming,
            "bl_masks": self.bl_masks,
            "messages": list(self.messages),
        }


def verify(instance: Instance, placement: Placement, deposition: str, claimed: int) -> VerifyReport:
    """Recompute the border length two ways and compare with the claim."""
    try:
        placement.check(instance)
    except BorderMinError as exc:
        return VerifyReport(False, claimed, False, messages=[f"invalid placement: {exc}"])
    missing = [p for p in instance.distinct if not is_subsequence(p, deposition)]
    if missing:
        return VerifyReport(
            False, claimed, False,
            messages=[f"deposition sequence does not contain probe {p!r}" for p in missing],
        )
    by_hamming = compute_bl(instance, placement, deposition, "hamming")
    by_masks = compute_bl(instance, placement, deposition, "masks")
    good = is_good(instance, placement, deposition)
    report = VerifyReport(
        passed=by_hamming == by_masks == claimed,
        claimed=claimed,
        supersequence=True,
        good=good,
        bl_hamming=by_hamming,
        bl_masks=by_masks,
    )
    if by_hamming != by_masks:
        report.messages.append(f"hamming ({by_hamming}) and mask ({by_masks}) border lengths disagree")
    if by_hamming != claimed:
        report.messages.append(f"claimed border length {claimed}, recomputed {by_hamming}")
    if not good:
        report.messages.append("warning: deposition sequence is redundant (some position deposits nowhere)")
    return report
