"""Placement delivery arrays: the data type, the validity checker and the
text interchange format.

A cell is either ``STAR`` (``None``) or a positive integer color.  Rows are
packets ``j = 1..F`` and columns are users ``k = 1..K``; all public indices
are 1-based.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidPdaError, MalformedPdaError, ParseError

STAR = None

Cell = Optional[int]


@dataclass(frozen=True)
class Pda:
    cells: tuple[tuple[Cell, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells or not cells[0]:
            raise MalformedPdaError("a PDA needs F >= 1 rows and K >= 1 columns")
        width = len(cells[0])
        for j, row in enumerate(cells, 1):
            if len(row) != width:
                raise MalformedPdaError(f"row {j} has {len(row)} cells, expected {width}")
            for k, c in enumerate(row, 1):
                if c is not None and (type(c) is not int or c < 1):
                    raise MalformedPdaError(f"cell ({j},{k}) is {c!r}, not a star or positive int")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Pda":
        """Build from rows whose entries are ints or the string ``"*"``."""
        return cls(tuple(tuple(None if c == "*" else c for c in row) for row in rows))

    @property
    def F(self) -> int:
        return len(self.cells)

    @property
    def K(self) -> int:
        return len(self.cells[0])

    @property
    def S(self) -> int:
        """Size of the color alphabet: the largest integer present (0 if none)."""
        return max((c for row in self.cells for c in row if c is not None), default=0)

    def cell(self, j: int, k: int) -> Cell:
        return self.cells[j - 1][k - 1]

    def replace(self, j: int, k: int, value: Cell) -> "Pda":
        rows = [list(r) for r in self.cells]
        rows[j - 1][k - 1] = value
        return Pda(tuple(tuple(r) for r in rows))

    def color_classes(self) -> dict[int, list[tuple[int, int]]]:
        """color -> [(j, k), ...] in row-major order."""
        classes = defaultdict(list)
        for j, row in enumerate(self.cells, 1):
            for k, c in enumerate(row, 1):
                if c is not None:
                    classes[c].append((j, k))
        return dict(sorted(classes.items()))

    def __str__(self):
        return serialize_pda(self)


@dataclass(frozen=True)
class Violation:
    """One failed condition.

    ``cells`` are (row, column) pairs; for C3b the last cell is the one that
    should have been a star.
    """

    condition: str
    color: Optional[int] = None
    cells: tuple[tuple[int, int], ...] = ()
    column: Optional[int] = None
    detail: str = ""

    def __str__(self):
        parts = [self.condition]
        if self.color is not None:
            parts.append(f"color {self.color}")
        if self.column is not None:
            parts.append(f"column {self.column}")
        if self.cells:
            parts.append("at " + " ".join(f"({j},{k})" for j, k in self.cells))
        if self.detail:
            parts.append(self.detail)
        return ": ".join([parts[0], " ".join(parts[1:])]) if len(parts) > 1 else parts[0]


@dataclass(frozen=True)
class PdaReport:
    valid: bool
    K: int
    F: int
    Z: int
    S: int
    g: Optional[int]
    violations: tuple[Violation, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class SchemeParams:
    K: int
    F: int
    Z: int
    S: int
    g: Optional[int]
    memory_ratio: Fraction
    rate: Fraction

    def summary(self) -> str:
        """``K F Z S g M/N R`` on one line."""
        g = "-" if self.g is None else str(self.g)
        return f"{self.K} {self.F} {self.Z} {self.S} {g} {self.memory_ratio} {self.rate}"


def verify_pda(p: Pda) -> PdaReport:
    """Check C1, C2, C3a and C3b, collecting every violation.

    Violations are ordered by condition (C1, C2, then C3 in row-major order
    of the first cell of each offending pair).
    """
    cells = p.cells
    F, K = p.F, p.K
    violations: list[Violation] = []

    star_counts = [sum(1 for j in range(F) if cells[j][k] is None) for k in range(K)]
    # reference Z is the most common column count, earliest column on ties
    Z = max(star_counts, key=lambda z: (star_counts.count(z), -star_counts.index(z)))
    for k, z in enumerate(star_counts, 1):
        if z != Z:
            violations.append(Violation("C1", column=k, detail=f"has {z} stars, expected {Z}"))

    classes = p.color_classes()
    S = p.S
    for s in range(1, S + 1):
        if s not in classes:
            violations.append(Violation("C2", color=s, detail="color never occurs"))

    pair_violations = []
    for s, members in classes.items():
        for a in range(len(members)):
            j1, k1 = members[a]
            for b in range(a + 1, len(members)):
                j2, k2 = members[b]
                if j1 == j2 or k1 == k2:
                    pair_violations.append(Violation("C3a", color=s, cells=((j1, k1), (j2, k2))))
                    continue
                for jj, kk in ((j1, k2), (j2, k1)):
                    if cells[jj - 1][kk - 1] is not None:
                        pair_violations.append(
                            Violation("C3b", color=s, cells=((j1, k1), (j2, k2), (jj, kk)))
                        )
    pair_violations.sort(key=lambda v: (v.cells[0], v.cells[1], v.condition, v.cells[2:]))
    violations.extend(pair_violations)

    sizes = {len(m) for m in classes.values()}
    g = sizes.pop() if len(sizes) == 1 and S == len(classes) else None
    return PdaReport(not violations, K, F, Z, S, g, tuple(violations))


def scheme_params(p: Pda) -> SchemeParams:
    report = verify_pda(p)
    if not report.valid:
        first = "; ".join(str(v) for v in report.violations[:3])
        raise InvalidPdaError(f"not a PDA ({len(report.violations)} violations): {first}")
    return SchemeParams(
        K=report.K,
        F=report.F,
        Z=report.Z,
        S=report.S,
        g=report.g,
        memory_ratio=Fraction(report.Z, report.F),
        rate=Fraction(report.S, report.F),
    )


def serialize_pda(p: Pda) -> str:
    lines = [f"PDA {p.K} {p.F}"]
    for row in p.cells:
        lines.append(" ".join("*" if c is None else str(c) for c in row))
    return "\n".join(lines) + "\n"


def _parse_int(token: str, line: int, column: int, what: str) -> int:
    if not token.isdigit() or not token.isascii():
        raise ParseError(f"expected a decimal integer for {what}, got {token!r}", line, column)
    return int(token)


def _tokens(text_line: str):
    """(1-based column, token) pairs of a whitespace-separated line."""
    col = 0
    for tok in text_line.split():
        col = text_line.index(tok, col)
        yield col + 1, tok
        col += len(tok)


def parse_pda(text: str) -> Pda:
    if not text:
        raise ParseError("empty document, missing 'PDA K F' header", 1)
    if not text.endswith("\n"):
        raise ParseError("missing trailing newline", text.count("\n") + 1)
    lines = text[:-1].split("\n")
    header = list(_tokens(lines[0]))
    if len(header) != 3 or header[0][1] != "PDA":
        raise ParseError("missing 'PDA K F' header", 1, 1)
    K = _parse_int(header[1][1], 1, header[1][0], "K")
    F = _parse_int(header[2][1], 1, header[2][0], "F")
    if K < 1 or F < 1:
        raise ParseError("K and F must be positive", 1)
    if len(lines) - 1 != F:
        raise ParseError(f"header declares {F} rows, found {len(lines) - 1}", len(lines))

    rows = []
    for lineno, line in enumerate(lines[1:], 2):
        toks = list(_tokens(line))
        if len(toks) != K:
            raise ParseError(f"ragged row: {len(toks)} tokens, expected {K}", lineno)
        row = []
        for col, tok in toks:
            if tok == "*":
                row.append(None)
                continue
            v = _parse_int(tok, lineno, col, "a cell")
            if v < 1:
                raise ParseError(f"cell {tok!r} is not a positive integer", lineno, col)
            row.append(v)
        rows.append(tuple(row))

    p = Pda(tuple(rows))
    present = {c for row in rows for c in row if c is not None}
    if present != set(range(1, p.S + 1)):
        missing = sorted(set(range(1, p.S + 1)) - present)
        raise ParseError(f"colors are not contiguous 1..{p.S}; missing {missing}")
    return p
