import json
from fractions import Fraction

import pytest

from lucasconv.emit import (
    emit,
    emit_basis,
    format_poly_n,
    format_poly_n_factored,
    parse_json,
    term_structure,
)
from lucasconv.engine import derive_closed_form, evaluate_closed_form
from lucasconv.sequences import FIBONACCI, LucasParams


def test_text_base_case():
    assert emit(derive_closed_form(1), "text") == "s_1(n) = U_{nk}\n"


def test_json_d2_shape():
    data = json.loads(emit(derive_closed_form(2), "json"))
    assert data["D"] == 2
    assert data["params"] is None
    assert data["prefactor"] == {"u_power": 1, "factorial": 1, "disc_power": 1}
    assert [t["s"] for t in data["terms"]] == [0, 1]
    assert data["terms"][1] == {"s": 1, "q_power": 1, "v_power": 0, "poly_n": ["0/1", "-2/1"]}


@pytest.mark.parametrize("D", range(1, 8))
def test_json_round_trip(D):
    cf = derive_closed_form(D)
    back = parse_json(emit(cf, "json"))
    assert back.D == cf.D
    assert back.terms == cf.terms
    assert emit(back, "json") == emit(cf, "json")


def test_json_round_trip_numeric():
    params = LucasParams(3, 2, 2)
    cf = derive_closed_form(4, params)
    back = parse_json(emit(cf, "json"))
    assert back.params == params
    assert back.terms == cf.terms
    assert evaluate_closed_form(back, params, 9) == evaluate_closed_form(cf, params, 9)


@pytest.mark.parametrize("fmt", ["text", "latex", "json"])
def test_deterministic(fmt):
    assert emit(derive_closed_form(5), fmt) == emit(derive_closed_form(5), fmt)


def test_latex_d2():
    out = emit(derive_closed_form(2), "latex")
    assert r"\frac{U_k(p,q)}{(V_k^2(p,q)-4q^k)}" in out
    assert "V_k(p,q)(n-1)U_{nk}(p,q)" in out
    assert "-2nq^{k}U_{(n-1)k}(p,q)" in out


def test_latex_d4_factored_terms():
    out = emit(derive_closed_form(4), "latex")
    assert "12q^{2k}V_k(p,q)(n-3)(n^2 + n - 1)U_{(n-2)k}(p,q)" in out
    assert "-8nq^{3k}(n-2)(n+2)U_{(n-3)k}(p,q)" in out


def test_text_d3_lines():
    lines = emit(derive_closed_form(3), "text").splitlines()
    assert lines[0] == "s_3(n) = U_k^2 / (2! * (V_k^2 - 4*q^k)^2) * ["
    assert lines[-2] == "  + (4*n^2 - 4) * q^(2k) * U_{(n-2)k}"


def test_term_structure_monomials():
    for D in range(1, 8):
        pre, terms = term_structure(derive_closed_form(D))
        assert pre == {"u_power": D - 1, "factorial": D - 1, "disc_power": D - 1}
        assert [(s, qp, vp) for s, qp, vp, _ in terms] == [(s, s, D - 1 - s) for s in range(D)]


def test_format_poly_n():
    assert format_poly_n([Fraction(-4), Fraction(-6), Fraction(4)]) == "4*n^2 - 6*n - 4"
    assert format_poly_n([]) == "0"
    assert format_poly_n([Fraction(1, 2), Fraction(-1)]) == "-n + 1/2"


def test_factored_rendering():
    # -2(n-2)(2n+1)
    scale, factors = format_poly_n_factored([Fraction(4), Fraction(6), Fraction(-4)])
    assert scale == -2 and sorted(factors) == ["2n+1", "n-2"]
    scale, factors = format_poly_n_factored([Fraction(0), Fraction(32), Fraction(0), Fraction(-8)])
    assert scale == -8 and sorted(factors) == ["n", "n+2", "n-2"]


def test_basis_text_fibonacci():
    out = emit_basis(derive_closed_form(2), FIBONACCI, "text")
    assert out == "s_2(n) at (p=1, q=-1, k=1) = 1/5 * [(n - 1) * U_{nk} + (2*n) * U_{(n-1)k}]\n"


def test_basis_latex_d6_constant():
    out = emit_basis(derive_closed_form(6), FIBONACCI, "latex")
    assert r"\frac{1}{75000}" in out
    assert "(n-1)(5n^4 - 70n^3 - 65n^2 + 490n + 264)U_{nk}" in out
    assert "2n(5n^4 + 5n^2 - 226)U_{(n-1)k}" in out


def test_basis_json():
    data = json.loads(emit_basis(derive_closed_form(2), FIBONACCI, "json"))
    assert data["P0"] == ["-1/5", "1/5"]
    assert data["P1"] == ["0/1", "2/5"]


def test_unknown_format():
    with pytest.raises(ValueError):
        emit(derive_closed_form(2), "yaml")
