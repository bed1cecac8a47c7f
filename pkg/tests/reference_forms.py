"""Reference closed forms, transcribed in the factored shape they are usually
printed in and expanded with sympy so that the comparison does not share code
with the package's own polynomial arithmetic.

REFERENCE_TERMS[D][s] is the polynomial in n multiplying
(q^k)^s V_k^(D-1-s) U_{(n-s)k} inside the prefactor
U_k^(D-1) / ((D-1)! (V_k^2 - 4q^k)^(D-1)).

REFERENCE_FIB[D] = (c_n, c_{n-1}) for p = 1, q = -1, k = 1, meaning
s_D(n) = c_n(n) F_n + c_{n-1}(n) F_{n-1} with the printed scale folded in. The D = 3 and D = 4
references are printed in the shifted bases (F_{n-1}, F_{n-2}) and
(F_{n-2}, F_{n-3}); they are rewritten with F_{n-2} = F_n - F_{n-1} and
F_{n-3} = 2 F_{n-1} - F_n.
"""

from fractions import Fraction

import sympy as sp

n = sp.Symbol("n")


def coeffs(expr):
    """Expanded coefficient list [c_0, c_1, ...] as Fractions."""
    poly = sp.Poly(sp.expand(expr), n)
    out = [Fraction(0)] * (poly.degree() + 1)
    for (t,), c in poly.terms():
        c = sp.Rational(c)
        out[t] = Fraction(int(c.p), int(c.q))
    while out and out[-1] == 0:
        out.pop()
    return out


REFERENCE_TERMS_FACTORED = {
    2: [n - 1, -2 * n],
    3: [
        (n - 1) * (n - 2),
        -2 * (n - 2) * (2 * n + 1),
        4 * (n - 2) * (n + 2),
    ],
    4: [
        (n - 1) * (n - 2) * (n - 3),
        -6 * (n - 2) * (n - 3) * (n + 1),
        12 * (n - 3) * (n**2 + n - 1),
        -8 * n * (n**2 - 4),
    ],
    5: [
        (n - 1) * (n - 2) * (n - 3) * (n - 4),
        -4 * (n - 2) * (n - 3) * (n - 4) * (2 * n + 3),
        12 * (n - 3) * (n - 4) * (2 * n**2 + 4 * n - 1),
        -8 * (n - 4) * (2 * n + 1) * (2 * n**2 + 2 * n - 9),
        16 * (n - 3) * (n - 1) * (n + 1) * (n + 3),
    ],
    6: [
        (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 5),
        -10 * (n - 2) * (n - 3) * (n - 4) * (n - 5) * (n + 2),
        20 * (n - 3) * (n - 4) * (n - 5) * (2 * n**2 + 6 * n + 1),
        -40 * (n - 4) * (n - 5) * (n + 1) * (2 * n**2 + 4 * n - 9),
        80 * (n - 5) * (n**4 + 2 * n**3 - 10 * n**2 - 11 * n + 9),
        -32 * n * (n - 4) * (n - 2) * (n + 2) * (n + 4),
    ],
}

REFERENCE_TERMS = {D: [coeffs(e) for e in terms] for D, terms in REFERENCE_TERMS_FACTORED.items()}

# Two-term forms over (F_n, F_{n-1}) before rewriting: (scale, {shift: poly}).
_FIB_RAW = {
    2: (sp.Rational(1, 5), {0: n - 1, 1: 2 * n}),
    3: (sp.Rational(1, 50), {1: 5 * n**2 - 9 * n - 2, 2: 5 * n**2 - 3 * n - 2}),
    4: (sp.Rational(1, 150), {2: 4 * n**3 - 12 * n**2 - 4 * n + 12, 3: 3 * n**3 - 6 * n**2 - 3 * n + 6}),
    5: (
        sp.Rational(1, sp.factorial(4) * 5**4),
        {0: 3 * (n - 1) * (8 * n**3 - 5 * n**2 - 27 * n + 50), 1: -20 * n * (5 * n**2 - 17)},
    ),
    6: (
        sp.Rational(1, sp.factorial(5) * 5**4),
        {0: (n - 1) * (5 * n**4 - 70 * n**3 - 65 * n**2 + 490 * n + 264),
         1: 2 * n * (5 * n**4 + 5 * n**2 - 226)},
    ),
}

_FN, _FN1 = sp.symbols("F_n F_n1")
_SHIFTED = {0: _FN, 1: _FN1, 2: _FN - _FN1, 3: 2 * _FN1 - _FN}


def _to_basis(scale, parts):
    expr = sp.expand(scale * sum(poly * _SHIFTED[s] for s, poly in parts.items()))
    return coeffs(expr.coeff(_FN)), coeffs(expr.coeff(_FN1))


REFERENCE_FIB = {D: _to_basis(*raw) for D, raw in _FIB_RAW.items()}
