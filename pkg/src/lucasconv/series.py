"""Truncated power series over exact rationals, and checks of the
differential identities satisfied by F_k(x) = U_k / (1 - V_k x + q^k x^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence, Tuple

from .errors import SeriesOrderError, ZeroUk
from .sequences import LucasParams
from .triangles import a_inner_sum, b_inner_sum

__all__ = [
    "TruncatedSeries",
    "fk_series",
    "series_mul",
    "series_pow",
    "series_derivative",
    "check_eq9",
    "check_proposition",
    "proposition_sides",
]


@dataclass(frozen=True)
class TruncatedSeries:
    """sum_m coeffs[m] x^m, known exactly for m < order and unknown beyond.

    ``coeffs`` always has exactly ``order`` entries.
    """

    coeffs: Tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 0:
            raise SeriesOrderError(f"negative truncation order {order}")
        cs = (cs + [Fraction(0)] * order)[:order]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def polynomial(cls, coeffs: Sequence, order: int) -> "TruncatedSeries":
        """An exact polynomial, viewed as a series valid to ``order``."""
        return cls(coeffs, order)

    def coeff(self, m: int) -> Fraction:
        if not 0 <= m < self.order:
            raise SeriesOrderError(f"coefficient x^{m} requested from a series of order {self.order}")
        return self.coeffs[m]

    __getitem__ = coeff

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesOrderError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[:order], order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], self.order)
        n = min(self.order, other.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        c = Fraction(other)
        return TruncatedSeries([c * a for a in self.coeffs], self.order)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return series_pow(self, e)

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Coefficientwise equality on the common valid range."""
        n = min(self.order, other.order)
        return self.coeffs[:n] == other.coeffs[:n]

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order > 8 else ""
        return f"TruncatedSeries([{shown}{more}], order={self.order})"


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, valid to min(f.order, g.order)."""
    n = min(f.order, g.order)
    a, b = f.coeffs, g.coeffs
    out = []
    for m in range(n):
        acc = Fraction(0)
        for i in range(m + 1):
            if a[i]:
                acc += a[i] * b[m - i]
        out.append(acc)
    return TruncatedSeries(out, n)


def series_pow(f: TruncatedSeries, e: int) -> TruncatedSeries:
    """f**e by repeated squaring; e >= 0, f**0 is the constant 1 at f's order."""
    if e < 0:
        raise ValueError("negative powers are not supported")
    result = TruncatedSeries([1], f.order)
    base = f
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def series_derivative(f: TruncatedSeries, times: int = 1) -> TruncatedSeries:
    """Termwise derivative; each differentiation loses one coefficient."""
    for _ in range(times):
        if f.order == 0:
            raise SeriesOrderError("derivative of a series with no known coefficients")
        f = TruncatedSeries([m * f.coeffs[m] for m in range(1, f.order)], f.order - 1)
    return f


def fk_series(params: LucasParams, N: int) -> TruncatedSeries:
    """F_k(x) to order N: coefficient m is U_{(m+1)k}(p, q).

    Generated from c_0 = U_k, c_1 = V_k U_k, c_m = V_k c_{m-1} - q^k c_{m-2},
    which is the expansion of U_k / (1 - V_k x + q^k x^2).
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    uk, vk, qk = params.uk, params.vk, params.qk
    cs = [uk, vk * uk]
    while len(cs) < N:
        cs.append(vk * cs[-1] - qk * cs[-2])
    return TruncatedSeries(cs[:N], N)


def check_eq9(params: LucasParams, N: int) -> bool:
    """(1 - V_k x + q^k x^2) F' == (V_k - 2 q^k x) F, compared to order N - 2."""
    if N < 3:
        raise ValueError(f"N must be >= 3, got {N}")
    vk, qk = params.vk, params.qk
    f = fk_series(params, N)
    df = series_derivative(f)
    lhs = TruncatedSeries.polynomial([1, -vk, qk], N) * df
    rhs = TruncatedSeries.polynomial([vk, -2 * qk], N) * f
    return lhs.truncate(N - 2).agrees_with(rhs.truncate(N - 2))


def proposition_sides(params: LucasParams, d: int, N: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of the order-d differential identity for F_k as truncated series.

    left  = sum_{j=0}^{d} (4Q)^(d-j) Sa(j, d) A^j F^(j+1)
    right = sum_{j=1}^{d} (-1)^(d-1) (2Q)^(d-j) / (j-1)! Sb(j, d) B^j F^{(j)}

    with Q = q^k, A = (V_k^2 - 4Q)/U_k, B = V_k - 2Qx and Sa, Sb the
    alternating binomial sums of :mod:`lucasconv.triangles`.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if N <= d + 2:
        raise ValueError(f"N must exceed d + 2, got N={N}, d={d}")
    uk, vk, qk = params.uk, params.vk, params.qk
    if uk == 0:
        raise ZeroUk(f"U_k = 0 for {params}")
    A = Fraction(vk * vk - 4 * qk, uk)
    B = TruncatedSeries.polynomial([vk, -2 * qk], N)
    f = fk_series(params, N)

    left = TruncatedSeries([], N)
    f_pow = f
    for j in range(d + 1):
        coef = Fraction(4 * qk) ** (d - j) * a_inner_sum(j, d) * A ** j
        left = left + coef * f_pow
        f_pow = f_pow * f

    right = TruncatedSeries([], N)
    deriv = f
    b_pow = TruncatedSeries([1], N)
    for j in range(1, d + 1):
        deriv = series_derivative(deriv)
        b_pow = b_pow * B
        coef = Fraction((-1) ** (d - 1) * (2 * qk) ** (d - j), factorial(j - 1)) * b_inner_sum(j, d)
        right = right + coef * (b_pow * deriv)
    return left, right


def check_proposition(params: LucasParams, d: int, N: int) -> bool:
    """True iff both sides agree on every coefficient the truncation leaves known.

    The right side carries j <= d derivatives of F, so agreement is checked
    on N - d coefficients (at least the N - d - 1 the identity needs).
    """
    left, right = proposition_sides(params, d, N)
    n = min(left.order, right.order)
    assert n == N - d
    return left.truncate(n).agrees_with(right.truncate(n))
