"""Brute-force values of the convolution sums

    s_d(n; p, q; k) = sum over j_1 + ... + j_d = n of prod_i U_{k j_i}(p, q).

Two independent routes: direct enumeration of compositions and the
coefficients of G_k(x)^d, where G_k(x) = sum_n U_{nk} x^n.

Compositions with a zero part contribute nothing because U_0 = 0, so
enumeration walks positive compositions only.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, List, Tuple

from .errors import BudgetExceeded
from .sequences import LucasParams, strided_u

__all__ = ["ConvSum", "s_enum", "s_series", "compositions", "DEFAULT_BUDGET"]

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class ConvSum:
    d: int
    n: int
    value: int

    def __int__(self):
        return self.value


def compositions(n: int, d: int, min_part: int = 1) -> Iterator[Tuple[int, ...]]:
    """All ordered d-tuples of integers >= min_part summing to n."""
    if d == 0:
        if n == 0:
            yield ()
        return
    if d == 1:
        if n >= min_part:
            yield (n,)
        return
    for first in range(min_part, n - min_part * (d - 1) + 1):
        for rest in compositions(n - first, d - 1, min_part):
            yield (first,) + rest


def s_enum(params: LucasParams, d: int, n: int, budget: int = DEFAULT_BUDGET) -> ConvSum:
    """s_d(n) summed term by term over the C(n-1, d-1) positive compositions."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    count = comb(n - 1, d - 1) if n >= 1 else 0
    if count > budget:
        raise BudgetExceeded(f"s_{d}({n}) has {count} compositions, budget is {budget}")
    u = [strided_u(params, j) for j in range(n + 1)]
    total = 0
    for parts in compositions(n, d):
        prod = 1
        for j in parts:
            prod *= u[j]
        total += prod
    return ConvSum(d, n, total)


def s_series(params: LucasParams, d: int, n_max: int) -> List[ConvSum]:
    """s_d(n) for n = 0..n_max as the coefficients of G_k(x)^d."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if n_max < 0:
        return []
    g = [strided_u(params, j) for j in range(n_max + 1)]
    power = g
    for _ in range(d - 1):
        power = [sum(power[i] * g[m - i] for i in range(m + 1)) for m in range(n_max + 1)]
    return [ConvSum(d, n, v) for n, v in enumerate(power)]
