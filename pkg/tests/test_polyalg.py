"""Polynomial arithmetic, division, S-polynomials, Buchberger."""

from fractions import Fraction

import pytest

from thermoident.errors import ParseError, UsageError
from thermoident.polyalg import (
    GRLEX,
    LEX,
    VariableSet,
    buchberger,
    is_member,
    normal_form,
    parse_relation_file,
    poly_gcd,
    s_polynomial,
)


def test_add_cancellation(xy):
    assert (xy.poly("x - y") + xy.poly("y")) == xy.poly("x")


def test_difference_of_squares(xy):
    assert xy.poly("x + y") * xy.poly("x - y") == xy.poly("x^2 - y^2")


def test_self_subtraction_is_zero():
    vs = VariableSet(["f1", "f2", "g1", "g2"])
    m = vs.poly("f1*g2 - f2*g1")
    assert (m - m).is_zero()


def test_mismatched_variable_sets_rejected(xy, xyz):
    with pytest.raises(UsageError):
        xy.poly("x") + xyz.poly("x")


def test_normal_form_generator_plus_constant():
    vs = VariableSet(["f1", "f2", "g1", "g2"])
    p = vs.poly("f1*g2 - f2*g1")
    assert normal_form(p, [vs.poly("f1*g2 - f2*g1 - 1")], GRLEX) == vs.one()


def test_normal_form_repeated_substitution(xy):
    # x^2*y modulo x - y: substitute x -> y twice by hand, leaving y^3.
    assert normal_form(xy.poly("x^2*y"), [xy.poly("x - y")], LEX) == xy.poly("y^3")


def test_normal_form_no_divisors(xy):
    p = xy.poly("x")
    assert normal_form(p, [], LEX) == p


def test_normal_form_zero_divisor_rejected(xy):
    with pytest.raises(UsageError):
        normal_form(xy.poly("x"), [xy.zero()], LEX)


def test_s_polynomial_hand_computation(xy):
    # y*(x^2 - 1) - x*(x*y - 1) = x - y
    s = s_polynomial(xy.poly("x^2 - 1"), xy.poly("x*y - 1"), LEX)
    assert s == xy.poly("x - y")


def test_s_polynomial_identical_inputs(xy):
    p = xy.poly("x^2 + y")
    assert s_polynomial(p, p, LEX).is_zero()


def test_s_polynomial_coprime_leads_cancel(xy):
    s = s_polynomial(xy.poly("x"), xy.poly("y"), LEX)
    assert s.is_zero()


def test_s_polynomial_zero_input_rejected(xy):
    with pytest.raises(UsageError):
        s_polynomial(xy.zero(), xy.poly("x"), LEX)


def test_buchberger_textbook_pair(xy):
    gb = buchberger([xy.poly("x^2 - 1"), xy.poly("x*y - 1")], LEX)
    assert gb.reduced
    expected = {xy.poly("x - y"), xy.poly("y^2 - 1")}
    assert set(gb.generators) == expected


def test_buchberger_single_generator_monic():
    vs = VariableSet(["f1", "f2", "g1", "g2"])
    gb = buchberger([vs.poly("2*f1*g2 - 2*f2*g1 - 2")], GRLEX)
    assert list(gb.generators) == [vs.poly("f1*g2 - f2*g1 - 1")]


def test_buchberger_membership_examples(xy):
    gb = buchberger([xy.poly("x^2 - 1"), xy.poly("x*y - 1")], LEX)
    assert is_member(xy.poly("x^2 - 1"), gb)
    assert is_member(xy.zero(), gb)
    gb_x = buchberger([xy.poly("x")], LEX)
    assert not is_member(xy.poly("x + 1"), gb_x)


def test_groebner_every_spair_reduces_to_zero(xy):
    gens = [xy.poly("x^2*y - 1"), xy.poly("x*y^2 - x")]
    gb = buchberger(gens, GRLEX)
    gl = list(gb.generators)
    for i in range(len(gl)):
        for j in range(i + 1, len(gl)):
            s = s_polynomial(gl[i], gl[j], GRLEX)
            if not s.is_zero():
                assert normal_form(s, gl, GRLEX).is_zero()


def test_poly_gcd_examples(xy):
    assert poly_gcd(xy.poly("x^2 - y^2"), xy.poly("x^2 + 2*x*y + y^2")) == xy.poly(
        "x + y"
    )
    assert poly_gcd(xy.poly("2*x^2*y - 2*y^3"), xy.poly("4*x*y + 4*y^2")) == xy.poly(
        "x*y + y^2"
    )
    assert poly_gcd(xy.poly("x"), xy.poly("y")) == xy.one()
    assert poly_gcd(xy.zero(), xy.poly("2*x")) == xy.poly("x")


def test_render_canonical_forms(xy):
    assert xy.poly("y + x^2 - 1").render(GRLEX) == "x^2 + y - 1"
    assert xy.poly("-x - 1/2").render(LEX) == "-x - 1/2"
    assert xy.poly("3*x*y^2").render(GRLEX) == "3*x*y^2"
    assert xy.zero().render() == "0"


def test_parse_rejects_garbage(xy):
    with pytest.raises(ParseError):
        xy.poly("x +")
    with pytest.raises(ParseError):
        xy.poly("1.5*x")
    with pytest.raises(UsageError):
        xy.poly("w")


def test_relation_file_round_trip():
    text = """
# a comment
vars: u v
u^2 - v  # trailing comment
u*v - 1
"""
    vs, rels = parse_relation_file(text)
    assert vs.names == ("u", "v")
    assert rels == [vs.poly("u^2 - v"), vs.poly("u*v - 1")]


def test_relation_file_requires_header():
    with pytest.raises(ParseError):
        parse_relation_file("x + y\n")


def test_constant_and_eval(xy):
    p = xy.poly("x^2*y - 3/2")
    assert p.evaluate({"x": 2.0, "y": 1.0}) == pytest.approx(2.5)
    assert xy.const(Fraction(5, 3)).constant_value() == Fraction(5, 3)
