"""Derivation of closed forms for s_D(n; p, q; k).

Comparing coefficients of x^(n-d-1) in the differential identity of
:mod:`lucasconv.series` gives, for every n >= d, a linear relation

    sum_{j=0}^{d} (4Q)^(d-j) Sa(j,d) A^j s_{j+1}(n+j-d)
        = sum_{j=1}^{d} cb(j,d) sum_{s=0}^{j} C(j,s) v(d,j,s; n) U_{(n+j-d-s)k}

with A = (V^2 - 4Q)/U, cb(j,d) = (-1)^(d-1) (2Q)^(d-j) Sb(j,d) / (j-1)!, and
v(d,j,s; n) = (-2Q)^s V^(j-s) prod_{i=1}^{j} (n+j-d-s-i).

The top term j = d carries s_{d+1}(n) with coefficient d! A^d. Substituting
the already derived closed forms of s_1..s_d and dividing by that coefficient
leaves s_{d+1}(n) as a combination of U_{nk}, ..., U_{(n-d)k}.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Tuple

from .errors import DegenerateParams, ZeroQ, ZeroUk
from .oracle import s_series
from .sequences import LucasParams, strided_u
from .symbolic import Q, U, V, ClosedForm, PolyInN, RationalFn, shift_poly_in_n
from .triangles import a_inner_sum, a_rec, b_inner_sum, b_rec

__all__ = [
    "TheoremRelation",
    "VerificationReport",
    "build_relation",
    "derive_closed_form",
    "specialize",
    "evaluate_closed_form",
    "verify_closed_form",
    "reduce_to_fibonacci_basis",
    "check_params",
    "prefactor",
]

DISC = V ** 2 - 4 * Q
A_SYMBOL = RationalFn(DISC, U)


def _values(params: LucasParams) -> Tuple[int, int, int]:
    return params.uk, params.vk, params.qk


def check_params(params: LucasParams) -> None:
    """Reject parameters for which A = (V_k^2 - 4q^k)/U_k is zero or undefined."""
    if params.uk == 0:
        raise ZeroUk(f"U_k = 0 for {params}")
    if params.discriminant == 0:
        raise DegenerateParams(f"p^2 = 4q for {params}; V_k^2 - 4q^k vanishes")


@dataclass(frozen=True)
class TheoremRelation:
    """The relation for one d.

    ``lhs[j]`` is the coefficient of s_{j+1}(n + j - d); ``rhs[s]`` is the
    polynomial in n multiplying U_{(n-s)k}. Coefficients are RationalFn in
    U, V, Q, or Fractions after :meth:`specialize`.
    """

    d: int
    lhs: Tuple
    rhs: Tuple[PolyInN, ...]

    def lhs_shift(self, j: int) -> int:
        return j - self.d

    def specialize(self, params: LucasParams) -> "TheoremRelation":
        vals = _values(params)
        return TheoremRelation(
            self.d,
            tuple(c.substitute(vals) for c in self.lhs),
            tuple(p.map(lambda c: c.substitute(vals)) for p in self.rhs),
        )

    def balance(self, params: LucasParams, n: int, conv: Dict[int, List[int]]) -> Tuple[Fraction, Fraction]:
        """Both sides at n given oracle values ``conv[j][m] = s_j(m)``."""
        rel = self if not isinstance(self.lhs[0], RationalFn) else self.specialize(params)
        left = sum(
            (rel.lhs[j] * conv[j + 1][n + j - self.d] for j in range(self.d + 1)),
            Fraction(0),
        )
        right = sum(
            (rel.rhs[s](n) * strided_u(params, n - s) for s in range(self.d + 1) if n - s >= 0),
            Fraction(0),
        )
        return left, right


@lru_cache(maxsize=None)
def build_relation(d: int) -> TheoremRelation:
    """Symbolic relation among s_1(n-d), ..., s_{d+1}(n) and U_{nk}, ..., U_{(n-d)k}."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    lhs = []
    for j in range(d + 1):
        sa = a_inner_sum(j, d)
        assert sa * 4 ** (d - j) == a_rec(j, d)
        lhs.append(RationalFn((4 * Q) ** (d - j) * sa) * A_SYMBOL ** j)
    assert lhs[d] == A_SYMBOL ** d * factorial(d)

    rhs: List[PolyInN] = [PolyInN() for _ in range(d + 1)]
    for j in range(1, d + 1):
        sb = b_inner_sum(j, d)
        assert Fraction((-1) ** (d - 1) * factorial(j - 1) * b_rec(j, d), 2 ** (d - j)) == sb
        cb = Fraction((-1) ** (d - 1) * 2 ** (d - j) * sb, factorial(j - 1))
        for s in range(j + 1):
            mono = (-2) ** s * cb * comb(j, s)
            if not mono:
                continue
            coef = RationalFn(mono * Q ** (d - j + s) * V ** (j - s))
            roots = [d + s + i - j for i in range(1, j + 1)]
            rhs[d - j + s] = rhs[d - j + s] + PolyInN.from_roots(roots).map(lambda c: coef * c)
    return TheoremRelation(d, tuple(lhs), tuple(rhs))


_symbolic_cache: Dict[int, ClosedForm] = {}
_numeric_cache: Dict[Tuple[int, LucasParams], ClosedForm] = {}
_cache_lock = threading.RLock()


def _eliminate(D: int, rel: TheoremRelation, lower, zero) -> Tuple[PolyInN, ...]:
    d = D - 1
    acc = list(rel.rhs)
    for j in range(d):
        c = rel.lhs[j]
        for s, poly in enumerate(lower(j + 1).terms):
            shifted = shift_poly_in_n(poly, j - d)
            acc[s + d - j] = acc[s + d - j] - shifted.map(lambda x: c * x)
    top = rel.lhs[d]
    if top == zero:
        raise DegenerateParams("leading coefficient d! A^d vanishes")
    inv = 1 / top
    return tuple(p.map(lambda x: x * inv) for p in acc)


def derive_closed_form(D: int, params: Optional[LucasParams] = None) -> ClosedForm:
    """Closed form of s_D(n), valid for n >= D.

    With ``params`` None the coefficients are rational functions of U, V, Q;
    otherwise the same elimination runs over the rationals at those
    parameters (which must be non-degenerate).
    """
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    if params is not None:
        check_params(params)
    with _cache_lock:
        if params is None:
            cached = _symbolic_cache.get(D)
        else:
            cached = _numeric_cache.get((D, params))
        if cached is not None:
            return cached
        if D == 1:
            one = RationalFn(1) if params is None else Fraction(1)
            cf = ClosedForm(1, (PolyInN([one]),), params)
        else:
            rel = build_relation(D - 1)
            if params is None:
                terms = _eliminate(D, rel, derive_closed_form, RationalFn(0))
            else:
                terms = _eliminate(D, rel.specialize(params),
                                   lambda j: derive_closed_form(j, params), Fraction(0))
            cf = ClosedForm(D, terms, params)
        if params is None:
            _symbolic_cache[D] = cf
        else:
            _numeric_cache[D, params] = cf
        return cf


def prefactor(D: int) -> RationalFn:
    """U^(D-1) / ((D-1)! (V^2 - 4Q)^(D-1)), the common factor of every term of s_D."""
    return RationalFn(U ** (D - 1), factorial(D - 1) * DISC ** (D - 1))


def specialize(cf: ClosedForm, params: LucasParams) -> ClosedForm:
    """Substitute numeric U_k, V_k, q^k into a symbolic closed form."""
    if not cf.symbolic:
        if cf.params != params:
            raise ValueError(f"closed form is specialized to {cf.params}, not {params}")
        return cf
    check_params(params)
    hit = cf._specialized.get(params)
    if hit is None:
        vals = _values(params)
        hit = ClosedForm(cf.D, tuple(p.map(lambda c: c.substitute(vals)) for p in cf.terms), params)
        cf._specialized[params] = hit
    return hit


def evaluate_closed_form(cf: ClosedForm, params: LucasParams, n: int) -> Fraction:
    """Value of the closed form at n >= D."""
    if n < cf.D:
        raise ValueError(f"closed form for s_{cf.D} is only valid for n >= {cf.D}, got {n}")
    num = specialize(cf, params)
    return sum((p(n) * strided_u(params, n - s) for s, p in enumerate(num.terms)), Fraction(0))


@dataclass
class VerificationReport:
    params: LucasParams
    D: int
    n_lo: int
    n_hi: int
    pairs: List[Tuple[int, Fraction, int]] = field(default_factory=list)

    @property
    def failures(self) -> List[Tuple[int, Fraction, int]]:
        return [(n, got, want) for n, got, want in self.pairs
                if got.denominator != 1 or got != want]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (f"{status} s_{self.D} {self.params} n={self.n_lo}..{self.n_hi}: "
                f"{len(self.pairs) - len(self.failures)}/{len(self.pairs)} exact matches")
        for n, got, want in self.failures[:5]:
            line += f"\n  n={n}: closed form {got}, oracle {want}"
        return line


def verify_closed_form(cf: ClosedForm, params: LucasParams, n_lo: int, n_hi: int) -> VerificationReport:
    """Compare the closed form against the series oracle for n_lo <= n <= n_hi."""
    if n_lo < cf.D:
        raise ValueError(f"n_lo must be >= D = {cf.D}, got {n_lo}")
    oracle = s_series(params, cf.D, n_hi)
    report = VerificationReport(params, cf.D, n_lo, n_hi)
    for n in range(n_lo, n_hi + 1):
        report.pairs.append((n, evaluate_closed_form(cf, params, n), oracle[n].value))
    return report


def reduce_to_fibonacci_basis(cf: ClosedForm, params: LucasParams) -> Tuple[PolyInN, PolyInN]:
    """Rewrite s_D(n) as P0(n) U_{nk} + P1(n) U_{(n-1)k}.

    Uses U_{(m-1)k} = (V_k U_{mk} - U_{(m+1)k}) / q^k from the highest shift
    down; the result has rational coefficients.
    """
    if params.q == 0:
        raise ZeroQ(f"q = 0 for {params}; cannot divide by q^k")
    num = specialize(cf, params)
    vk, qk = Fraction(params.vk), Fraction(params.qk)
    terms = list(num.terms) + [PolyInN(), PolyInN()]
    for s in range(cf.D - 1, 1, -1):
        p = terms[s]
        if p.is_zero():
            continue
        terms[s - 1] = terms[s - 1] + p * (vk / qk)
        terms[s - 2] = terms[s - 2] - p * (1 / qk)
        terms[s] = PolyInN()
    return terms[0], terms[1]
