"""Gas models: closed forms, domains, numeric evaluation, oracles."""

import math
from fractions import Fraction

import pytest

from thermoident.derivcalc import DerivTriple, SecondDerivSpec
from thermoident.errors import (
    DegenerateCoordinates,
    DomainError,
    UnsupportedQuantity,
    UsageError,
)
from thermoident.models import (
    StatePoint,
    check_jacobian,
    eval_quantity,
    ideal_gas,
    oracle_second,
    oracle_triple,
    synthesis,
    van_der_waals,
)

S23 = StatePoint(2.0, 3.0)


def test_ideal_gas_closed_forms_at_2_3():
    m = ideal_gas(Fraction(5, 3))
    vals = m.valuation(S23)
    assert vals["f"] == pytest.approx(6.0, abs=1e-12)
    assert vals["f1"] == pytest.approx(3.0, abs=1e-12)
    assert vals["f2"] == pytest.approx(2.0, abs=1e-12)
    assert vals["g1"] == pytest.approx(0.75, abs=1e-12)
    assert vals["g2"] == pytest.approx(5.0 / 6.0, abs=1e-12)
    jac = vals["f1"] * vals["g2"] - vals["f2"] * vals["g1"]
    assert jac == pytest.approx(1.0, abs=1e-12)


def test_ideal_gas_jacobian_cancels_symbolically():
    # gamma/(gamma-1) - 1/(gamma-1) = 1 exactly.
    g = Fraction(5, 3)
    assert g / (g - 1) - 1 / (g - 1) == 1


def test_ideal_gas_heat_capacity():
    m = ideal_gas(Fraction(5, 3))
    assert eval_quantity(m, "cv", S23) == pytest.approx(1.5, abs=1e-12)
    assert eval_quantity(m, "cp", S23) == pytest.approx(2.5, abs=1e-12)
    assert eval_quantity(m, "cp - cv", S23) == pytest.approx(1.0, abs=1e-12)


def test_ideal_gas_parameter_validation():
    with pytest.raises(UsageError):
        ideal_gas(1.0)
    with pytest.raises(UsageError):
        ideal_gas(0.5)


def test_van_der_waals_specializes_to_ideal():
    g = 1.4
    vdw = van_der_waals(0.0, 0.0, g)
    ideal = ideal_gas(g)
    for s in (S23, StatePoint(1.5, 1.0), StatePoint(3.0, 2.0)):
        vi = ideal.valuation(s)
        vw = vdw.valuation(s)
        for name, value in vi.items():
            assert vw[name] == pytest.approx(value, rel=1e-14, abs=1e-14), name


def test_van_der_waals_jacobian_and_domain():
    m = van_der_waals(1.0, 0.5, 1.4)
    vals = m.valuation(S23)
    jac = vals["f1"] * vals["g2"] - vals["f2"] * vals["g1"]
    assert abs(jac - 1.0) <= 1e-9
    with pytest.raises(DomainError):
        m.valuation(StatePoint(2.0, 0.4))
    with pytest.raises(UsageError):
        van_der_waals(-1.0, 0.0, 1.4)


def test_check_jacobian_reports():
    assert check_jacobian(ideal_gas(1.4), tol=1e-12).passed
    grid = [
        StatePoint(1.5 + 2.5 * i / 4, 1.0 + 2.0 * j / 4)
        for i in range(5)
        for j in range(5)
    ]
    rep = check_jacobian(van_der_waals(1.0, 0.5, 1.4), grid, tol=1e-9)
    assert rep.passed and rep.states == 25


def test_synthesis_constant_gamma_matches_quadrature():
    m = synthesis((1.4,))
    # phi(w) = (w - 1)/0.4 up to quadrature tolerance.
    assert m.u(2.0, 3.0) == pytest.approx(5.0 / 0.4, rel=1e-9)
    assert check_jacobian(m, tol=1e-8).passed


def test_synthesis_nonconstant_gamma():
    m = synthesis((1.4, 0.01))
    grid = [
        StatePoint(1.0 + 2.0 * i / 4, 1.0 + 2.0 * j / 4)
        for i in range(5)
        for j in range(5)
    ]
    assert check_jacobian(m, grid, tol=1e-6).passed
    # phi(6) = 100*(ln 0.46 - ln 0.41) by hand integration of 1/(0.4 + 0.01 w).
    assert m.u(2.0, 3.0) == pytest.approx(
        100.0 * (math.log(0.46) - math.log(0.41)), rel=1e-9
    )


def test_synthesis_degenerate_gamma_rejected():
    with pytest.raises(DomainError):
        synthesis((1.0,))
    m = synthesis((1.4, -0.1))  # gamma drops below 1 for w >= 4
    with pytest.raises(DomainError):
        m.valuation(StatePoint(3.0, 3.0))


def test_eval_quantity_examples():
    m = ideal_gas(Fraction(5, 3))
    assert eval_quantity(m, "D(3,1,2)", S23) == pytest.approx(3.0, abs=1e-12)
    assert eval_quantity(m, "J(3,4;1,2)", S23) == pytest.approx(1.0, abs=1e-9)
    assert eval_quantity(m, "gamma", S23) == pytest.approx(5.0 / 3.0, abs=1e-9)
    with pytest.raises(UnsupportedQuantity):
        eval_quantity(m, "Phi", S23)


def test_eval_quantity_degenerate_denominator():
    m = ideal_gas(Fraction(5, 3))
    # (1,3,6): enthalpy is a function of temperature alone on the ideal gas.
    with pytest.raises(DegenerateCoordinates):
        eval_quantity(m, DerivTriple(1, 3, 6), S23)


def test_oracle_triple_matches_symbolic():
    m = ideal_gas(Fraction(5, 3))
    assert oracle_triple(m, DerivTriple(3, 1, 2), S23) == pytest.approx(3.0, abs=1e-6)
    assert oracle_triple(m, DerivTriple(1, 3, 4), S23) == pytest.approx(
        5.0 / 6.0, abs=1e-5
    )
    assert oracle_triple(m, DerivTriple(3, 3, 4), S23) == pytest.approx(1.0, abs=1e-8)


def test_oracle_triple_flags_degenerate_maps():
    m = ideal_gas(Fraction(5, 3))
    with pytest.raises(DegenerateCoordinates):
        oracle_triple(m, DerivTriple(1, 3, 6), S23)


def test_oracle_second_matches_symbolic():
    m = ideal_gas(Fraction(5, 3))
    spec = SecondDerivSpec(DerivTriple(8, 1, 2), 3, 4)
    sym = eval_quantity(m, spec, S23)
    orc = oracle_second(m, spec, S23)
    assert orc == pytest.approx(sym, rel=1e-4, abs=1e-4)


def test_value_codes():
    m = ideal_gas(Fraction(5, 3))
    assert m.value(1, S23) == 2.0
    assert m.value(3, S23) == pytest.approx(6.0)
    with pytest.raises(UnsupportedQuantity):
        m.value(8, S23)


def test_gauge_metadata_present():
    for m in (ideal_gas(1.4), van_der_waals(1, 0.5, 1.4), synthesis((1.4, 0.01))):
        assert m.gauge
