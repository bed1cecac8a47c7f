"""Generalized Fibonacci and Lucas sequences U_n(p, q), V_n(p, q).

Both are generated from the integer recurrence x_n = p*x_{n-1} - q*x_{n-2};
the roots of t**2 - p*t + q are never formed, so the repeated-root case
p**2 == 4*q is representable here.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Dict, List, Tuple

__all__ = [
    "LucasParams",
    "lucas_u",
    "lucas_v",
    "strided_u",
    "FIBONACCI",
]


@dataclass(frozen=True)
class LucasParams:
    """Integer parameters (p, q) and the stride k >= 1."""

    p: int
    q: int
    k: int = 1

    def __post_init__(self):
        for name in ("p", "q", "k"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an int, got {getattr(self, name)!r}")
        if self.k < 1:
            raise ValueError(f"stride k must be >= 1, got {self.k}")

    @property
    def uk(self) -> int:
        return lucas_u(self, self.k)

    @property
    def vk(self) -> int:
        return lucas_v(self, self.k)

    @property
    def qk(self) -> int:
        return self.q ** self.k

    @property
    def discriminant(self) -> int:
        return self.p * self.p - 4 * self.q

    def is_degenerate(self) -> bool:
        """True when the derived identities divide by zero (p^2 = 4q or U_k = 0)."""
        return self.discriminant == 0 or self.uk == 0

    def __str__(self):
        return f"(p={self.p}, q={self.q}, k={self.k})"


FIBONACCI = LucasParams(1, -1, 1)


class _SequenceTable:
    # Append-only; each index is written once under the lock and never changed.
    def __init__(self, x0: int, x1: int, p: int, q: int):
        self._values: List[int] = [x0, x1]
        self._p = p
        self._q = q
        self._lock = threading.Lock()

    def get(self, n: int) -> int:
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            p, q = self._p, self._q
            while len(values) <= n:
                values.append(p * values[-1] - q * values[-2])
        return values[n]


_tables: Dict[Tuple[str, int, int], _SequenceTable] = {}
_tables_lock = threading.Lock()


def _table(kind: str, p: int, q: int) -> _SequenceTable:
    key = (kind, p, q)
    table = _tables.get(key)
    if table is None:
        with _tables_lock:
            table = _tables.get(key)
            if table is None:
                x0, x1 = (0, 1) if kind == "U" else (2, p)
                table = _tables[key] = _SequenceTable(x0, x1, p, q)
    return table


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")


def lucas_u(params: LucasParams, n: int) -> int:
    """Return U_n(p, q): U_0 = 0, U_1 = 1, U_n = p*U_{n-1} - q*U_{n-2}.

    >>> lucas_u(LucasParams(1, -1), 10)
    55
    """
    _check_index(n)
    return _table("U", params.p, params.q).get(n)


def lucas_v(params: LucasParams, n: int) -> int:
    """Return V_n(p, q): V_0 = 2, V_1 = p, same recurrence as U.

    >>> lucas_v(LucasParams(1, -1), 5)
    11
    """
    _check_index(n)
    return _table("V", params.p, params.q).get(n)


def strided_u(params: LucasParams, n: int) -> int:
    """Return U_{n*k}(p, q)."""
    _check_index(n)
    return lucas_u(params, n * params.k)
