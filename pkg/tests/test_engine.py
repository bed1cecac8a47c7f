from fractions import Fraction
from math import factorial

import pytest

from lucasconv.emit import term_structure
from lucasconv.engine import (
    A_SYMBOL,
    build_relation,
    derive_closed_form,
    evaluate_closed_form,
    reduce_to_fibonacci_basis,
    specialize,
    verify_closed_form,
)
from lucasconv.errors import DegenerateParams, ZeroQ, ZeroUk
from lucasconv.oracle import s_enum, s_series
from lucasconv.sequences import FIBONACCI, LucasParams, lucas_u
from lucasconv.symbolic import PolyInN, Q, RationalFn, V

from conftest import PARAM_MATRIX


def poly(*coeffs):
    return PolyInN([RationalFn(c) for c in coeffs])


def test_relation_d1():
    rel = build_relation(1)
    assert rel.lhs == (RationalFn(4 * Q), A_SYMBOL)
    # (n-1) V U_{nk} - 2 (n-2) Q U_{(n-1)k}
    assert rel.rhs[0] == poly(-V, V)
    assert rel.rhs[1] == poly(4 * Q, -2 * Q)


def test_relation_d2():
    rel = build_relation(2)
    assert rel.lhs == (RationalFn(16 * Q ** 2), RationalFn(12 * Q) * A_SYMBOL, A_SYMBOL ** 2 * 2)
    # (n-1)(n-2) V^2, -2(n-2)(2n-5) Q V, 4 (n-3)^2 Q^2
    assert rel.rhs[0] == poly(2 * V ** 2, -3 * V ** 2, V ** 2)
    assert rel.rhs[1] == poly(-20 * Q * V, 18 * Q * V, -4 * Q * V)
    assert rel.rhs[2] == poly(36 * Q ** 2, -24 * Q ** 2, 4 * Q ** 2)


@pytest.mark.parametrize("d", range(1, 11))
def test_relation_top_coefficient(d):
    assert build_relation(d).lhs[d] == A_SYMBOL ** d * factorial(d)


@pytest.mark.parametrize("params", PARAM_MATRIX, ids=str)
@pytest.mark.parametrize("d", range(1, 5))
def test_relation_balances_on_oracle_values(params, d):
    conv = {j: [c.value for c in s_series(params, j, 30)] for j in range(1, d + 2)}
    rel = build_relation(d)
    for n in range(d, 25):
        left, right = rel.balance(params, n, conv)
        assert left == right


def test_derive_d1():
    cf = derive_closed_form(1)
    assert cf.terms == (PolyInN([RationalFn(1)]),)


def test_derive_d2_structure():
    _, terms = term_structure(derive_closed_form(2))
    assert terms == [(0, 0, 1, [-1, 1]), (1, 1, 0, [0, -2])]


def test_derive_d3_structure():
    _, terms = term_structure(derive_closed_form(3))
    assert terms[0][3] == [2, -3, 1]            # (n-1)(n-2)
    assert terms[1][3] == [4, 6, -4]            # -2(n-2)(2n+1)
    assert terms[2][3] == [-4, 0, 4]            # 4(n-1)(n+1)


def test_s3_last_term_alternative_rejected_by_oracle():
    # 4(n-2)(n+2) in place of 4(n-1)(n+1) is off by 12 q^{2k} U_{(n-2)k} and
    # gives non-integers at the Fibonacci parameters.
    f = lambda m: lucas_u(FIBONACCI, m)
    alt = lambda n: Fraction((n - 1) * (n - 2) * f(n) + 2 * (n - 2) * (2 * n + 1) * f(n - 1)
                             + 4 * (n - 2) * (n + 2) * f(n - 2), 50)
    assert alt(3) == Fraction(19, 25)
    assert s_enum(FIBONACCI, 3, 3).value == 1
    cf = derive_closed_form(3)
    assert evaluate_closed_form(cf, FIBONACCI, 3) == 1


def test_derive_d4_last_term():
    _, terms = term_structure(derive_closed_form(4))
    # -8 n (n^2 - 4)
    assert terms[3] == (3, 3, 0, [0, 32, 0, -8])


@pytest.mark.parametrize("D", range(2, 8))
def test_degree_bound(D):
    for p in derive_closed_form(D).terms:
        assert p.degree == D - 1


@pytest.mark.parametrize("D", range(1, 7))
def test_numeric_derivation_matches_specialized_symbolic(D):
    for params in PARAM_MATRIX:
        assert derive_closed_form(D, params).terms == specialize(derive_closed_form(D), params).terms


def test_evaluate_examples():
    assert evaluate_closed_form(derive_closed_form(2), FIBONACCI, 3) == 2
    assert evaluate_closed_form(derive_closed_form(4), FIBONACCI, 5) == 4
    for params in PARAM_MATRIX:
        for D in range(1, 7):
            assert evaluate_closed_form(derive_closed_form(D), params, D) == params.uk ** D


def test_evaluate_below_range_rejected():
    with pytest.raises(ValueError):
        evaluate_closed_form(derive_closed_form(3), FIBONACCI, 2)


@pytest.mark.parametrize("D, params, hi", [
    (2, FIBONACCI, 60),
    (6, LucasParams(3, 2, 2), 40),
    (3, LucasParams(2, -1, 1), 60),
])
def test_verify_examples(D, params, hi):
    report = verify_closed_form(derive_closed_form(D), params, D, hi)
    assert report.passed, report.summary()
    assert len(report.pairs) == hi - D + 1


def test_verify_reports_failures():
    cf = derive_closed_form(3)
    broken = type(cf)(3, (cf.terms[0] + PolyInN([RationalFn(1)]),) + cf.terms[1:])
    report = verify_closed_form(broken, FIBONACCI, 3, 10)
    assert not report.passed
    assert "FAIL" in report.summary()


@pytest.mark.parametrize("params", [LucasParams(2, 1), LucasParams(-4, 4, 3), LucasParams(0, 1, 2)], ids=str)
def test_degenerate_params_rejected(params):
    with pytest.raises(DegenerateParams):
        derive_closed_form(3, params)
    with pytest.raises(DegenerateParams):
        evaluate_closed_form(derive_closed_form(3), params, 5)


def test_zero_uk_is_degenerate():
    with pytest.raises(ZeroUk):
        derive_closed_form(2, LucasParams(0, 1, 2))


def test_basis_d2_fibonacci():
    p0, p1 = reduce_to_fibonacci_basis(derive_closed_form(2), FIBONACCI)
    assert p0.coeffs == (Fraction(-1, 5), Fraction(1, 5))
    assert p1.coeffs == (0, Fraction(2, 5))


@pytest.mark.parametrize("params", PARAM_MATRIX, ids=str)
@pytest.mark.parametrize("D", range(1, 7))
def test_basis_reduction_is_exact(params, D):
    p0, p1 = reduce_to_fibonacci_basis(derive_closed_form(D), params)
    table = s_series(params, D, 40)
    for n in range(D, 41):
        value = p0(n) * lucas_u(params, n * params.k) + p1(n) * lucas_u(params, (n - 1) * params.k)
        assert value == table[n].value


def test_basis_requires_nonzero_q():
    with pytest.raises(ZeroQ):
        reduce_to_fibonacci_basis(derive_closed_form(3), LucasParams(3, 0))
