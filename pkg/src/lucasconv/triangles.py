"""The integer coefficient triangles a(l, d) and b(l, d).

Each triangle is available two ways: by its defining recurrence (row by row,
memoized) and by its alternating-binomial closed form. The two agree on every
index; the test suite checks this exhaustively up to 40.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Tuple

__all__ = [
    "a_rec",
    "a_closed",
    "b_rec",
    "b_closed",
    "a_inner_sum",
    "b_inner_sum",
    "TriangleTable",
    "triangle_table",
]


class _RowCache:
    """Rows of a triangle computed on demand; rows[d][l] for 0 <= l <= width."""

    def __init__(self, first_row, next_row):
        self._rows: List[List[int]] = [first_row]
        self._next_row = next_row
        self._lock = threading.Lock()

    def row(self, d: int) -> List[int]:
        rows = self._rows
        if d < len(rows):
            return rows[d]
        with self._lock:
            while len(rows) <= d:
                rows.append(self._next_row(rows[-1], len(rows)))
        return rows[d]


def _next_a_row(prev: List[int], d: int) -> List[int]:
    # a(l, d) = 4(l+1) a(l, d-1) + l a(l-1, d-1); row d has entries l = 0..d
    row = [4 ** d]
    for l in range(1, d + 1):
        above = prev[l] if l < len(prev) else 0
        row.append(4 * (l + 1) * above + l * prev[l - 1])
    return row


def _next_b_row(prev: List[int], d: int) -> List[int]:
    # index 0 is a placeholder so that row[l] is b(l, d); b is undefined at l = 0
    row = [0, (-2) ** (d - 1)]
    for l in range(2, d + 1):
        above = prev[l] if l < len(prev) else 0
        row.append(prev[l - 1] - 2 * l * above)
    return row


_A_ROWS = _RowCache([1], _next_a_row)
_B_ROWS = _RowCache([0], _next_b_row)  # row 0 unused


def _check_nonneg(**kw):
    for name, value in kw.items():
        if value < 0:
            raise ValueError(f"{name} must be >= 0, got {value}")


def _check_pos(**kw):
    for name, value in kw.items():
        if value < 1:
            raise ValueError(f"{name} must be >= 1, got {value}")


def a_rec(l: int, d: int) -> int:
    """a(l, d) from a(0, d) = 4^d, a(l, 0) = 0 (l >= 1) and the recurrence."""
    _check_nonneg(l=l, d=d)
    if l > d:
        return 0
    return _A_ROWS.row(d)[l]


def a_inner_sum(j: int, d: int) -> int:
    """sum_{i=0}^{j} (-1)^i C(j, i) (j + 1 - i)^d."""
    return sum((-1) ** i * comb(j, i) * (j + 1 - i) ** d for i in range(j + 1))


def b_inner_sum(j: int, d: int) -> int:
    """sum_{i=0}^{j-1} (-1)^i C(j-1, i) (i + 1)^(d-1)."""
    return sum((-1) ** i * comb(j - 1, i) * (i + 1) ** (d - 1) for i in range(j))


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {value}")
    return value.numerator


def a_closed(l: int, d: int) -> int:
    """a(l, d) = 4^(d-l) * sum_{j=0}^{l} (-1)^j C(l, j) (l + 1 - j)^d.

    The power of 4 is negative when l > d; the sum vanishes there, so the
    value is still the integer 0.
    """
    _check_nonneg(l=l, d=d)
    value = Fraction(4) ** (d - l) * a_inner_sum(l, d)
    return _as_int(value, f"a({l}, {d})")


def b_rec(l: int, d: int) -> int:
    """b(l, d) from b(1, d) = (-2)^(d-1), b(l, 1) = 0 (l >= 2) and the recurrence."""
    _check_pos(l=l, d=d)
    if l > d:
        return 0
    return _B_ROWS.row(d)[l]


def b_closed(l: int, d: int) -> int:
    """b(l, d) = (-1)^(d-1) 2^(d-l) / (l-1)! * sum_{j=0}^{l-1} (-1)^j C(l-1, j) (j+1)^(d-1)."""
    _check_pos(l=l, d=d)
    value = Fraction((-1) ** (d - 1)) * Fraction(2) ** (d - l) / factorial(l - 1) * b_inner_sum(l, d)
    return _as_int(value, f"b({l}, {d})")


@dataclass
class TriangleTable:
    """Values of one triangle on a square index range.

    ``kind`` is ``"a"`` (indices from 0) or ``"b"`` (indices from 1).
    """

    kind: str
    max_index: int
    values: Dict[Tuple[int, int], int] = field(default_factory=dict)

    @property
    def first_index(self) -> int:
        return 0 if self.kind == "a" else 1

    def index_range(self) -> range:
        return range(self.first_index, self.max_index + 1)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.values[key]

    def rows(self) -> List[List[int]]:
        """Row per d, column per l."""
        r = self.index_range()
        return [[self.values[l, d] for l in r] for d in r]

    def to_text(self) -> str:
        r = self.index_range()
        header = ["d\\l"] + [str(l) for l in r]
        body = [[str(d)] + [str(v) for v in row] for d, row in zip(r, self.rows())]
        widths = [max(len(line[c]) for line in [header] + body) for c in range(len(header))]
        lines = [" ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in [header] + body]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "first_index": self.first_index,
            "max_index": self.max_index,
            "rows": [{"d": d, "values": row} for d, row in zip(self.index_range(), self.rows())],
        }
        return json.dumps(payload, indent=2) + "\n"


def triangle_table(kind: str, max_index: int) -> TriangleTable:
    """Tabulate a or b on 0..max_index (a) or 1..max_index (b) by recurrence."""
    if kind not in ("a", "b"):
        raise ValueError(f"kind must be 'a' or 'b', got {kind!r}")
    rec, closed = (a_rec, a_closed) if kind == "a" else (b_rec, b_closed)
    table = TriangleTable(kind, max_index)
    for d in table.index_range():
        for l in table.index_range():
            table.values[l, d] = rec(l, d)
            assert table.values[l, d] == closed(l, d), (kind, l, d)
    return table
