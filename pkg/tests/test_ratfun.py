"""Rational functions over the primitive alphabet and total derivatives."""

import pytest

from thermoident.errors import DivisionByZero, OrderCapExceeded
from thermoident.ratfun import (
    PRIMITIVES,
    RationalFunction,
    poly_total_derivative,
    prim,
    total_derivative,
)


def rf(num, den=1):
    return RationalFunction(num, den)


def test_reciprocal_product_is_one():
    assert rf("f1", "g2") * rf("g2", "f1") == rf(1)


def test_common_denominator_sum():
    assert rf(1, "f1") + rf(1, "f2") == rf("f1 + f2", "f1*f2")


def test_quotient_cancels_shared_factor():
    # (f*g1/f1) / (f*g2/f2) = f2*g1 / (f1*g2), the f cancelling by hand.
    left = rf("f*g1", "f1") / rf("f*g2", "f2")
    assert left == rf("f2*g1", "f1*g2")
    assert left.render() == "f2*g1 / (f1*g2)"


def test_equality_up_to_scalar():
    assert rf("f1", "g2") == rf("2*f1", "2*g2")
    assert rf("f1", "g2") != rf("f2", "g2")


def test_equality_is_constraint_free():
    # f1*g2 - f2*g1 equals 1 only modulo the Maxwell ideal, not identically.
    assert rf("f1*g2 - f2*g1") != rf(1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        rf("f1") / rf(0)
    with pytest.raises(DivisionByZero):
        RationalFunction("f1", "0")


def test_normalization_idempotent_and_canonical():
    r = rf("-2*f1", "-4*g2")
    again = RationalFunction(r.num, r.den)
    assert (r.num, r.den) == (again.num, again.den)
    # Denominator leading coefficient is positive.
    assert r.render() == "1/2*f1 / g2"


def test_zero_representation():
    z = rf(0, "g2")
    assert z.is_zero()
    assert z.den == PRIMITIVES.one()


def test_table_derivatives():
    assert total_derivative(rf("f"), "x") == rf("f1")
    assert total_derivative(rf("f"), "y") == rf("f2")
    assert total_derivative(rf("g2"), "x") == rf("g12")
    assert total_derivative(rf("x"), "y") == rf(0)


def test_product_rule():
    assert total_derivative(rf("f1*g2"), "y") == rf("f12*g2 + f1*g22")


def test_maxwell_prolongation_by_hand():
    got = poly_total_derivative(prim("f1*g2 - f2*g1 - 1"), "x")
    assert got == prim("f11*g2 + f1*g12 - f12*g1 - f2*g11")


def test_quotient_rule():
    got = total_derivative(rf("f1", "g2"), "x")
    assert got == rf("f11*g2 - f1*g12", "g2^2")


def test_second_order_symbols_capped():
    with pytest.raises(OrderCapExceeded):
        total_derivative(rf("f11"), "x")
    with pytest.raises(OrderCapExceeded):
        total_derivative(rf("x", "g22"), "y")


def test_mixed_derivatives_commute_on_base_symbols():
    for name in ("x", "y", "f", "g"):
        xy_ = total_derivative(total_derivative(rf(name), "x"), "y")
        yx = total_derivative(total_derivative(rf(name), "y"), "x")
        assert xy_ == yx
    assert total_derivative(total_derivative(rf("f"), "x"), "y") == rf("f12")


def test_evaluate_with_degenerate_denominator():
    from thermoident.errors import DegenerateCoordinates

    vals = {name: 1.0 for name in PRIMITIVES.names}
    vals["g2"] = 1e-15
    with pytest.raises(DegenerateCoordinates):
        rf("f1", "g2").evaluate(vals)


def test_render_omits_unit_denominator():
    assert rf("f1*g2 - f2*g1 - 1").render() == "f1*g2 - f2*g1 - 1"
    assert rf("-g1", "g2").render() == "-g1 / g2"
