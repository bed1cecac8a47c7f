"""Serialization of closed forms: plain text, LaTeX and JSON (with a parser).

JSON layout::

    {"D": int,
     "params": null | {"p": int, "q": int, "k": int},
     "prefactor": {"u_power": D-1, "factorial": D-1, "disc_power": D-1},
     "terms": [{"s": int, "q_power": int, "v_power": int,
                "poly_n": ["num/den", ...]}, ...]}

Each term stands for poly_n(n) * (q^k)^q_power * V_k^v_power * U_{(n-s)k},
and the whole sum is multiplied by U_k^u_power / (factorial! *
(V_k^2 - 4q^k)^disc_power). ``poly_n`` lists coefficients of n^0, n^1, ...
A specialized (numeric) closed form has all powers 0 and carries ``params``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import DISC, prefactor, reduce_to_fibonacci_basis
from .sequences import LucasParams
from .symbolic import Q, V, ClosedForm, MultiPoly, PolyInN, RationalFn

__all__ = [
    "emit",
    "parse_json",
    "term_structure",
    "format_poly_n",
    "format_poly_n_factored",
    "emit_basis",
    "FORMATS",
]

FORMATS = ("text", "latex", "json")

Term = Tuple[int, int, int, List[Fraction]]


def term_structure(cf: ClosedForm) -> Tuple[Dict[str, int], List[Term]]:
    """Split a closed form into its prefactor powers and (s, q_power, v_power, poly) terms.

    Raises ValueError if some term is not a single Q^a V^b monomial times a
    polynomial in n once the prefactor is removed.
    """
    D = cf.D
    if not cf.symbolic:
        pre = {"u_power": 0, "factorial": 0, "disc_power": 0}
        return pre, [(s, 0, 0, [Fraction(c) for c in p.coeffs]) for s, p in enumerate(cf.terms)]
    pre = {"u_power": D - 1, "factorial": D - 1, "disc_power": D - 1}
    inv = prefactor(D).inverse()
    terms: List[Term] = []
    for s, p in enumerate(cf.terms):
        mono: Optional[Tuple[int, int, int]] = None
        coeffs: List[Fraction] = []
        for c in p.coeffs:
            r = c * inv
            if r.is_zero():
                coeffs.append(Fraction(0))
                continue
            if not (r.is_polynomial() and r.num.is_monomial()):
                raise ValueError(f"term s={s} of s_{D} is not monomial in U, V, Q: {r}")
            (eu, ev, eq), value = r.num.leading()
            value /= r.den.constant_value()
            if eu != 0 or (mono is not None and mono != (eu, ev, eq)):
                raise ValueError(f"term s={s} of s_{D} mixes monomials")
            mono = (eu, ev, eq)
            coeffs.append(value)
        if mono is None:
            mono = (0, D - 1 - s, s)
        terms.append((s, mono[2], mono[1], coeffs))
    return pre, terms


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _to_json(cf: ClosedForm) -> str:
    pre, terms = term_structure(cf)
    payload = {
        "D": cf.D,
        "params": None if cf.symbolic else {"p": cf.params.p, "q": cf.params.q, "k": cf.params.k},
        "prefactor": pre,
        "terms": [
            {"s": s, "q_power": qp, "v_power": vp, "poly_n": [_frac_str(c) for c in coeffs]}
            for s, qp, vp, coeffs in terms
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_json(text: str) -> ClosedForm:
    """Inverse of ``emit(cf, "json")``."""
    data = json.loads(text)
    D = int(data["D"])
    pre = data["prefactor"]
    params = data.get("params")
    terms: List[PolyInN] = [PolyInN() for _ in range(D)]
    if params is None:
        scale = RationalFn(MultiPoly.var("U") ** pre["u_power"],
                           factorial(pre["factorial"]) * DISC ** pre["disc_power"])
        for t in data["terms"]:
            mono = scale * RationalFn(Q ** t["q_power"] * V ** t["v_power"])
            terms[t["s"]] = PolyInN([mono * Fraction(c) for c in t["poly_n"]])
        return ClosedForm(D, tuple(terms))
    lp = LucasParams(int(params["p"]), int(params["q"]), int(params["k"]))
    for t in data["terms"]:
        if t["q_power"] or t["v_power"]:
            raise ValueError("specialized closed forms carry no symbolic powers")
        terms[t["s"]] = PolyInN([Fraction(c) for c in t["poly_n"]])
    return ClosedForm(D, tuple(terms), lp)


def format_poly_n(coeffs: Sequence[Fraction], var: str = "n", times: str = "*") -> str:
    """Expanded polynomial, highest power first, e.g. ``4*n^2 - 6*n - 4``."""
    parts = []
    for t in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[t])
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if t == 0:
            body = str(a)
        else:
            mono = var if t == 1 else f"{var}^{t}"
            body = mono if a == 1 else f"{a}{times}{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _divisors(m: int) -> List[int]:
    m = abs(m)
    return [x for x in range(1, m + 1) if m % x == 0] if m else [1]


def _integer_coeffs(coeffs: Sequence[Fraction]) -> Tuple[Fraction, List[int]]:
    """coeffs == scale * ints with ints coprime and leading int positive."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    g = g or 1
    if ints and ints[-1] < 0:
        g = -g
    return Fraction(g, den), [x // g for x in ints]


def format_poly_n_factored(coeffs: Sequence[Fraction]) -> Tuple[Fraction, List[str]]:
    """Best-effort factorization over the rationals by peeling off rational roots.

    Returns (constant, factors) with factors rendered like ``n-2`` or
    ``2n+1``; anything left without rational roots is one expanded factor.
    """
    coeffs = [Fraction(c) for c in coeffs]
    if not any(coeffs):
        return Fraction(0), []
    scale, ints = _integer_coeffs(coeffs)
    factors: List[str] = []
    while len(ints) > 1 and ints[0] == 0:
        factors.append("n")
        ints = ints[1:]
    changed = True
    while changed and len(ints) > 2:
        changed = False
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                if gcd(num, den) != 1:
                    continue
                for root in (Fraction(num, den), Fraction(-num, den)):
                    quotient = _divide_linear(ints, root)
                    if quotient is not None:
                        factors.append(_linear(root))
                        ints = quotient
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    if len(ints) == 2:
        root = Fraction(-ints[0], ints[1])
        factors.append(_linear(root))
        scale *= ints[1] // root.denominator
    elif len(ints) > 2:
        factors.append(format_poly_n([Fraction(x) for x in ints], times=""))
    elif ints:
        scale *= ints[0]
    return scale, factors


def _divide_linear(ints: List[int], root: Fraction) -> Optional[List[int]]:
    """Divide the integer polynomial by (b n - a) for root a/b, if exact over Z."""
    a, b = root.numerator, root.denominator
    # synthetic division from the top coefficient
    deg = len(ints) - 1
    out = [0] * deg
    rem = Fraction(0)
    acc = Fraction(0)
    for t in range(deg, -1, -1):
        acc = acc * root + ints[t]
        if t > 0:
            out[t - 1] = acc
        else:
            rem = acc
    if rem != 0:
        return None
    # quotient by (n - root); rescale to quotient by (b n - a)
    quotient = [c / b for c in out]
    if any(c.denominator != 1 for c in quotient):
        return None
    return [int(c) for c in quotient]


def _linear(root: Fraction) -> str:
    a, b = root.numerator, root.denominator
    lead = "n" if b == 1 else f"{b}n"
    if a == 0:
        return lead
    return f"{lead}-{a}" if a > 0 else f"{lead}+{-a}"


def _u_index(s: int) -> str:
    return "nk" if s == 0 else f"(n-{s})k"


def _q_text(power: int) -> str:
    if power == 0:
        return ""
    return "q^k" if power == 1 else f"q^({power}k)"


def _v_text(power: int) -> str:
    if power == 0:
        return ""
    return "V_k" if power == 1 else f"V_k^{power}"


def _emit_text(cf: ClosedForm) -> str:
    pre, terms = term_structure(cf)
    lhs = f"s_{cf.D}(n)"
    if not cf.symbolic:
        lhs += f" at {cf.params}"
    lines = []
    for s, qp, vp, coeffs in terms:
        if not any(coeffs):
            continue
        factors = [f for f in (_q_text(qp), _v_text(vp)) if f]
        poly = format_poly_n(coeffs)
        if poly != "1":
            factors.insert(0, f"({poly})")
        factors.append(f"U_{{{_u_index(s)}}}")
        lines.append(" * ".join(factors))
    body = lines[0] if lines else "0"
    if len(lines) > 1:
        body = "\n    " + "\n  + ".join(lines)
    if pre["u_power"] == 0 and pre["factorial"] == 0:
        if len(lines) > 1:
            return f"{lhs} ={body}\n"
        return f"{lhs} = {body}\n"
    u = "U_k" if pre["u_power"] == 1 else f"U_k^{pre['u_power']}"
    disc = "(V_k^2 - 4*q^k)" + ("" if pre["disc_power"] == 1 else f"^{pre['disc_power']}")
    head = f"{lhs} = {u} / ({pre['factorial']}! * {disc}) * ["
    if len(lines) > 1:
        return f"{head}{body}\n]\n"
    return f"{head} {body} ]\n"


def _latex_coeff(coeffs: Sequence[Fraction], symbols: str = "", tail: str = "") -> Tuple[str, str]:
    """Sign and body of ``coeffs(n) * symbols * tail``, e.g. ("-", "2nq^{k}(n-3)U_{nk}")."""
    scale, factors = format_poly_n_factored(coeffs)
    sign = "-" if scale < 0 else "+"
    a = abs(scale)
    if a.denominator == 1:
        mag = "" if a == 1 and (factors or symbols or tail) else str(a)
    else:
        mag = rf"\frac{{{a.numerator}}}{{{a.denominator}}}"
    bare_n = "n" * factors.count("n")
    rest = "".join(f"({f})" for f in factors if f != "n")
    return sign, mag + bare_n + symbols + rest + tail


def _emit_latex(cf: ClosedForm) -> str:
    pre, terms = term_structure(cf)
    lines = []
    for s, qp, vp, coeffs in terms:
        if not any(coeffs):
            continue
        q = "" if qp == 0 else ("q^{k}" if qp == 1 else f"q^{{{qp}k}}")
        v = "" if vp == 0 else ("V_k(p,q)" if vp == 1 else f"V_k^{{{vp}}}(p,q)")
        sign, body = _latex_coeff(coeffs, q + v, f"U_{{{_u_index(s)}}}(p,q)")
        lines.append((sign, body))
    if not lines:
        rendered = "0"
    else:
        first_sign, first = lines[0]
        rendered = ("-" if first_sign == "-" else "") + first
        for sign, body in lines[1:]:
            rendered += rf"\\[2pt]" + "\n" + rf"\quad{sign}{body}"
    lhs = f"s_{{{cf.D}}}(n;p,q;k)"
    if pre["u_power"] == 0 and pre["factorial"] == 0:
        return f"\\begin{{array}}{{l}}\n{lhs}={rendered}\n\\end{{array}}\n"
    up = "" if pre["u_power"] == 1 else f"^{{{pre['u_power']}}}"
    dp = "" if pre["disc_power"] == 1 else f"^{{{pre['disc_power']}}}"
    fac = "" if pre["factorial"] <= 1 else f"{pre['factorial']}!"
    frac = rf"\frac{{U_k{up}(p,q)}}{{{fac}(V_k^2(p,q)-4q^k){dp}}}"
    return (f"\\begin{{array}}{{l}}\n{lhs}\\\\\n\\quad={frac}\\biggl({rendered}\\biggr)\n"
            f"\\end{{array}}\n")


def emit(cf: ClosedForm, fmt: str = "text") -> str:
    """Render a closed form as ``text``, ``latex`` or ``json``; output is deterministic."""
    if fmt == "text":
        return _emit_text(cf)
    if fmt == "latex":
        return _emit_latex(cf)
    if fmt == "json":
        return _to_json(cf)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _common_scale(polys: Sequence[PolyInN]) -> Fraction:
    """Positive rational L such that every coefficient of every poly times 1/L is an integer, coprime overall."""
    coeffs = [Fraction(c) for p in polys for c in p.coeffs]
    if not any(coeffs):
        return Fraction(1)
    scale, _ = _integer_coeffs(coeffs + [Fraction(0)])
    return abs(scale)


def emit_basis(cf: ClosedForm, params: LucasParams, fmt: str = "text") -> str:
    """Render s_D(n) = P0(n) U_{nk} + P1(n) U_{(n-1)k} at numeric params."""
    p0, p1 = reduce_to_fibonacci_basis(cf, params)
    if fmt == "json":
        payload = {
            "D": cf.D,
            "params": {"p": params.p, "q": params.q, "k": params.k},
            "basis": ["U_{nk}", "U_{(n-1)k}"],
            "P0": [_frac_str(Fraction(c)) for c in p0.coeffs],
            "P1": [_frac_str(Fraction(c)) for c in p1.coeffs],
        }
        return json.dumps(payload, indent=2) + "\n"
    scale = _common_scale([p0, p1])
    q0 = [Fraction(c) / scale for c in p0.coeffs]
    q1 = [Fraction(c) / scale for c in p1.coeffs]
    if fmt == "text":
        pre = "" if scale == 1 else f"{scale} * "
        return (f"s_{cf.D}(n) at {params} = {pre}[({format_poly_n(q0)}) * U_{{nk}}"
                f" + ({format_poly_n(q1)}) * U_{{(n-1)k}}]\n")
    if fmt == "latex":
        parts = []
        for coeffs, idx in ((q0, "nk"), (q1, "(n-1)k")):
            if not any(coeffs):
                continue
            parts.append(_latex_coeff(coeffs, "", f"U_{{{idx}}}"))
        rendered = "".join((("-" if s == "-" else "") if i == 0 else s) + b for i, (s, b) in enumerate(parts))
        frac = "" if scale == 1 else rf"\frac{{{scale.numerator}}}{{{scale.denominator}}}"
        return f"s_{{{cf.D}}}(n;{params.p},{params.q};{params.k})={frac}\\bigl({rendered or '0'}\\bigr)\n"
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
