"""Exact symbolic arithmetic in the symbols U, V, Q.

U, V and Q stand for U_k(p, q), V_k(p, q) and q^k. Three types are provided:

* :class:`MultiPoly` -- polynomials in U, V, Q with rational coefficients,
  stored sparsely as ``{(e_U, e_V, e_Q): coefficient}``;
* :class:`RationalFn` -- quotients of two MultiPolys in lowest terms;
* :class:`PolyInN` -- polynomials in n whose coefficients lie in a field
  (RationalFn for symbolic work, Fraction once U, V, Q are numbers).

Monomials are ordered lexicographically with U > V > Q, which is plain tuple
comparison on exponent triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple, Union

__all__ = [
    "SYMBOLS",
    "MultiPoly",
    "RationalFn",
    "PolyInN",
    "ClosedForm",
    "poly_gcd",
    "shift_poly_in_n",
    "U",
    "V",
    "Q",
]

SYMBOLS = ("U", "V", "Q")
NVARS = len(SYMBOLS)
Exps = Tuple[int, ...]
Terms = Dict[Exps, Fraction]

_ZERO_EXPS: Exps = (0,) * NVARS


# Raw dict-based helpers. Every Terms dict handled here holds no zero values.

def _add(f: Terms, g: Terms, scale: Fraction = Fraction(1)) -> Terms:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(f: Terms, g: Terms) -> Terms:
    out: Terms = {}
    for ef, cf in f.items():
        for eg, cg in g.items():
            e = tuple(a + b for a, b in zip(ef, eg))
            out[e] = out.get(e, 0) + cf * cg
    return {e: c for e, c in out.items() if c}


def _scale(f: Terms, c) -> Terms:
    if not c:
        return {}
    return {e: v * c for e, v in f.items()}


def _shift(f: Terms, mono: Exps) -> Terms:
    return {tuple(a + b for a, b in zip(e, mono)): c for e, c in f.items()}


def _lead(f: Terms) -> Exps:
    return max(f)


def _monic(f: Terms) -> Terms:
    if not f:
        return f
    lc = f[_lead(f)]
    return f if lc == 1 else {e: c / lc for e, c in f.items()}


def _exquo(f: Terms, g: Terms) -> Terms:
    """Exact quotient f / g; raises ArithmeticError if g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    lg = _lead(g)
    lcg = g[lg]
    q: Terms = {}
    r = dict(f)
    while r:
        lr = _lead(r)
        diff = tuple(a - b for a, b in zip(lr, lg))
        if min(diff) < 0:
            raise ArithmeticError("polynomial division is not exact")
        c = r[lr] / lcg
        q[diff] = q.get(diff, 0) + c
        r = _add(r, _shift(g, diff), -c)
    return {e: c for e, c in q.items() if c}


def _deg(f: Terms, v: int) -> int:
    return max(e[v] for e in f)


def _coeffs_in(f: Terms, v: int) -> Dict[int, Terms]:
    """View f as a polynomial in variable v; the coefficient dicts drop x_v."""
    out: Dict[int, Terms] = {}
    for e, c in f.items():
        rest = e[:v] + (0,) + e[v + 1:]
        out.setdefault(e[v], {})[rest] = c
    return out


def _mono(v: int, power: int) -> Exps:
    e = [0] * NVARS
    e[v] = power
    return tuple(e)


def _content(f: Terms, v: int) -> Terms:
    """Monic gcd of the coefficients of f viewed in variable v."""
    g: Terms = {}
    for c in _coeffs_in(f, v).values():
        g = _gcd_from(g, c, v + 1) if g else _monic(c)
        if len(g) == 1 and g.get(_ZERO_EXPS) == 1:
            break
    return g


def _prim(f: Terms, v: int) -> Terms:
    return _monic(_exquo(f, _content(f, v)))


def _prem(a: Terms, b: Terms, v: int) -> Terms:
    """Sparse pseudo-remainder of a by b in variable v."""
    db = _deg(b, v)
    lcb = _coeffs_in(b, v)[db]
    r = a
    while r:
        dr = _deg(r, v)
        if dr < db:
            break
        lcr = _coeffs_in(r, v)[dr]
        r = _add(_mul(r, lcb), _mul(_shift(lcr, _mono(v, dr - db)), b), Fraction(-1))
    return r


def _gcd_from(f: Terms, g: Terms, v: int) -> Terms:
    """Monic gcd of nonzero f, g that involve only variables v..NVARS-1."""
    if len(f) == 1 or len(g) == 1:
        exps = [min(e[i] for e in list(f) + list(g)) for i in range(NVARS)]
        return {tuple(exps): Fraction(1)}
    if v == NVARS:
        return {_ZERO_EXPS: Fraction(1)}
    df, dg = _deg(f, v), _deg(g, v)
    if df == 0 and dg == 0:
        return _gcd_from(f, g, v + 1)
    if df == 0:
        return _gcd_from(f, _content(g, v), v + 1)
    if dg == 0:
        return _gcd_from(_content(f, v), g, v + 1)
    cf, cg = _content(f, v), _content(g, v)
    c = _gcd_from(cf, cg, v + 1)
    a, b = _monic(_exquo(f, cf)), _monic(_exquo(g, cg))
    if _deg(a, v) < _deg(b, v):
        a, b = b, a
    while True:
        r = _prem(a, b, v)
        if not r:
            break
        if _deg(r, v) == 0:
            b = {_ZERO_EXPS: Fraction(1)}
            break
        a, b = b, _prim(r, v)
    return _monic(_mul(c, b))


def _gcd(f: Terms, g: Terms) -> Terms:
    if not f:
        return _monic(g)
    if not g:
        return _monic(f)
    return _gcd_from(f, g, 0)


class MultiPoly:
    """Polynomial in U, V, Q over the rationals. Immutable and hashable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exps, object] | None = None):
        clean: Terms = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != NVARS or min(e) < 0:
                raise ValueError(f"bad exponent tuple {e}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Terms) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = Fraction(c)
        return cls._raw({_ZERO_EXPS: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls._raw({_mono(SYMBOLS.index(name), 1): Fraction(1)})

    @classmethod
    def monomial(cls, coeff, u: int = 0, v: int = 0, q: int = 0) -> "MultiPoly":
        return cls({(u, v, q): coeff})

    @property
    def terms(self) -> Dict[Exps, Fraction]:
        return dict(self._terms)

    def items(self):
        """(exponents, coefficient) pairs, highest monomial first."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {_ZERO_EXPS}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(_ZERO_EXPS, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading(self) -> Tuple[Exps, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = _lead(self._terms)
        return e, self._terms[e]

    def degree(self, name: str) -> int:
        if not self._terms:
            return -1
        return _deg(self._terms, SYMBOLS.index(name))

    @staticmethod
    def _coerce(other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Rational)):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return MultiPoly._raw(_add(self._terms, other._terms))

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return MultiPoly._raw(_add(self._terms, other._terms, Fraction(-1)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return MultiPoly._raw(_scale(self._terms, Fraction(other)))
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return MultiPoly._raw(_mul(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exquo(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient; ArithmeticError if ``other`` does not divide ``self``."""
        return MultiPoly._raw(_exquo(self._terms, self._coerce(other)._terms))

    def monic(self) -> "MultiPoly":
        return MultiPoly._raw(_monic(self._terms))

    def substitute(self, values: Sequence) -> Fraction:
        """Evaluate at numeric (U, V, Q)."""
        vals = [Fraction(x) for x in values]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(vals, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return format_multipoly(self)

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to leading coefficient 1 (0 if both are 0)."""
    return MultiPoly._raw(_gcd(f._terms, g._terms))


def _format_coeff_monomial(c: Fraction, e: Exps, first: bool, power_fmt, names) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    factors = []
    for name, k in zip(names, e):
        if k == 1:
            factors.append(name)
        elif k:
            factors.append(power_fmt(name, k))
    mono = "*".join(factors)
    if not mono:
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    if first:
        return sign + body
    return f" {sign} {body}"


def format_multipoly(f: MultiPoly, names: Sequence[str] = SYMBOLS,
                     power_fmt: Callable[[str, int], str] = lambda s, k: f"{s}^{k}") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i, (e, c) in enumerate(f.items()):
        parts.append(_format_coeff_monomial(c, e, i == 0, power_fmt, names))
    return "".join(parts)


FieldLike = Union["RationalFn", Fraction]


class RationalFn:
    """num/den in lowest terms with den's leading coefficient (lex U > V > Q) equal to 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, _reduced: bool = False):
        num = MultiPoly._coerce(num)
        den = MultiPoly._coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFn needs polynomial or rational arguments")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = MultiPoly(), MultiPoly.const(1)
        elif not _reduced:
            g = poly_gcd(num, den)
            if not (g.is_constant()):
                num, den = num.exquo(g), den.exquo(g)
        _, lc = den.leading()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num = num
        self.den = den

    @staticmethod
    def _coerce(other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, (int, Rational, MultiPoly)):
            return RationalFn(other, _reduced=True)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            t = a + c
            g = poly_gcd(t, b)
            if g.is_constant():
                return RationalFn(t, b, _reduced=True)
            return RationalFn(t.exquo(g), b.exquo(g), _reduced=True)
        # Henrici: only the gcd of the two denominators can cancel
        g = poly_gcd(b, d)
        bg, dg = b.exquo(g), d.exquo(g)
        t = a * dg + c * bg
        if t.is_zero():
            return RationalFn(0)
        g2 = poly_gcd(t, g)
        return RationalFn(t.exquo(g2), bg * d.exquo(g2), _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                return RationalFn(0)
            return RationalFn(self.num * Fraction(other), self.den, _reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        g1, g2 = poly_gcd(a, d), poly_gcd(c, b)
        return RationalFn(a.exquo(g1) * c.exquo(g2), b.exquo(g2) * d.exquo(g1), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFn(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFn(self.num ** e, self.den ** e, _reduced=True)

    def substitute(self, values: Sequence) -> Fraction:
        """Evaluate at numeric (U, V, Q); ZeroDivisionError at a pole."""
        den = self.den.substitute(values)
        if den == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {tuple(values)}")
        return self.num.substitute(values) / den

    def equals(self, other) -> bool:
        """Equality by cross-multiplication; independent of canonical form."""
        other = self._coerce(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        num = str(self.num)
        if len(self.num._terms) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"RationalFn({str(self)!r})"


U = MultiPoly.var("U")
V = MultiPoly.var("V")
Q = MultiPoly.var("Q")


def _is_zero(c) -> bool:
    return not c


@dataclass(frozen=True)
class PolyInN:
    """sum_t coeffs[t] * n^t with coefficients in a field; trailing zeros trimmed."""

    coeffs: Tuple

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "PolyInN") -> "PolyInN":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyInN([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self):
        return PolyInN([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PolyInN):
            if not self.coeffs or not other.coeffs:
                return PolyInN()
            out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    t = a * b
                    out[i + j] = t if out[i + j] is None else out[i + j] + t
            return PolyInN(out)
        return PolyInN([c * other for c in self.coeffs])

    def __rmul__(self, other):
        return PolyInN([other * c for c in self.coeffs])

    def map(self, fn) -> "PolyInN":
        return PolyInN([fn(c) for c in self.coeffs])

    def __call__(self, n):
        """Horner evaluation at a number n (result in the coefficient field)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    @classmethod
    def from_roots(cls, roots: Iterable[int], unit=Fraction(1)) -> "PolyInN":
        """unit * prod (n - r)."""
        p = cls([unit])
        for r in roots:
            p = p * cls([Fraction(-r), Fraction(1)])
        return p


def shift_poly_in_n(poly: PolyInN, t: int) -> PolyInN:
    """Return p(n + t) in expanded form."""
    if t == 0 or poly.is_zero():
        return poly
    deg = poly.degree
    out = [None] * (deg + 1)
    for i, c in enumerate(poly.coeffs):
        if _is_zero(c):
            continue
        for m in range(i + 1):
            term = c * (comb(i, m) * t ** (i - m))
            out[m] = term if out[m] is None else out[m] + term
    return PolyInN([0 if c is None else c for c in out])


@dataclass(frozen=True)
class ClosedForm:
    """s_D(n) = sum_{s=0}^{D-1} terms[s](n) * U_{(n-s)k}.

    ``params`` is None for the symbolic form (coefficients are RationalFn in
    U, V, Q); otherwise the coefficients are Fractions specialized to it.
    """

    D: int
    terms: Tuple[PolyInN, ...]
    params: object = None
    # per-instance memo of numeric specializations, keyed by params
    _specialized: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def symbolic(self) -> bool:
        return self.params is None
