"""Rational functions over the fixed primitive alphabet.

The alphabet has 14 symbols: the coordinates x, y, the two base functions
f (temperature) and g (entropy), their first partials f1, f2, g1, g2 and
second partials f11, f12, f22, g11, g12, g22.  A single symbol f12 (resp.
g12) stands for both mixed partials, so symmetry of second derivatives is
built into the alphabet.  The alphabet is closed at second order: taking a
total derivative of a second-order symbol raises OrderCapExceeded.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, DegenerateCoordinates, OrderCapExceeded, UsageError
from .polyalg import GRLEX, Polynomial, VariableSet, exact_div, poly_gcd

__all__ = [
    "PRIMITIVE_NAMES",
    "PRIMITIVES",
    "SECOND_ORDER",
    "FIRST_ORDER",
    "RationalFunction",
    "DERIVATION_X",
    "DERIVATION_Y",
    "poly_total_derivative",
    "total_derivative",
    "prim",
]

PRIMITIVE_NAMES = (
    "x", "y", "f", "g",
    "f1", "f2", "g1", "g2",
    "f11", "f12", "f22", "g11", "g12", "g22",
)
PRIMITIVES = VariableSet(PRIMITIVE_NAMES)
SECOND_ORDER = frozenset({"f11", "f12", "f22", "g11", "g12", "g22"})
FIRST_ORDER = frozenset(PRIMITIVE_NAMES) - SECOND_ORDER

CANONICAL_ORDER = GRLEX

# Total-derivative tables: symbol -> its x-derivative (resp. y-derivative).
# Second-order symbols are absent; differentiating them is an error.
_DERIV_SPEC = {
    "x": ("1", "0"),
    "y": ("0", "1"),
    "f": ("f1", "f2"),
    "g": ("g1", "g2"),
    "f1": ("f11", "f12"),
    "f2": ("f12", "f22"),
    "g1": ("g11", "g12"),
    "g2": ("g12", "g22"),
}
DERIVATION_X = {name: PRIMITIVES.poly(dx) for name, (dx, _) in _DERIV_SPEC.items()}
DERIVATION_Y = {name: PRIMITIVES.poly(dy) for name, (_, dy) in _DERIV_SPEC.items()}


def prim(text):
    """Parse polynomial text over the primitive alphabet."""
    return PRIMITIVES.poly(text)


def _coerce_poly(value):
    if isinstance(value, Polynomial):
        if value.vars != PRIMITIVES:
            raise UsageError("rational functions live over the primitive alphabet")
        return value
    if isinstance(value, str):
        return prim(value)
    if isinstance(value, (int, Fraction)):
        return PRIMITIVES.const(value)
    raise UsageError(f"cannot interpret {value!r} as a primitive polynomial")


class RationalFunction:
    """Quotient of primitive-alphabet polynomials in canonical form.

    Canonical means: numerator and denominator share no polynomial factor,
    the denominator has coprime integer coefficients, and its leading
    coefficient under the canonical (grlex) order is positive.  Zero is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator in rational function")
        if num.is_zero():
            self.num = num
            self.den = PRIMITIVES.one()
            return
        g = poly_gcd(num, den)
        if not (g.is_constant() and g.constant_value() == 1):
            num = exact_div(num, g)
            den = exact_div(den, g)
        c = den.content()
        _, lc = den.leading_term(CANONICAL_ORDER)
        if lc < 0:
            c = -c
        if c != 1:
            num = num.scale(1 / c)
            den = den.scale(1 / c)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def one(cls):
        return cls(1)

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def __add__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __mul__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise UsageError("rational function power must be an integer")
        if n < 0:
            if self.is_zero():
                raise DivisionByZero("negative power of zero")
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        """Cross-multiplied equality (free of any constraint ideal)."""
        if not isinstance(other, RationalFunction):
            try:
                other = _coerce_rf(other)
            except UsageError:
                return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def evaluate(self, values, den_tol=1e-12):
        """Numeric value at a {symbol: number} valuation."""
        den = self.den.evaluate(values)
        if abs(den) < den_tol:
            raise DegenerateCoordinates("denominator vanishes numerically")
        return self.num.evaluate(values) / den

    def symbols(self):
        """Names of the primitive symbols that actually occur."""
        present = self.num.variables_present() | self.den.variables_present()
        return {PRIMITIVE_NAMES[i] for i in present}

    def render(self):
        num_txt = self.num.render(CANONICAL_ORDER)
        if self.den.is_constant() and self.den.constant_value() == 1:
            return num_txt
        den_txt = self.den.render(CANONICAL_ORDER)
        if len(self.num.terms) > 1:
            num_txt = f"({num_txt})"
        if not _is_atomic(self.den):
            den_txt = f"({den_txt})"
        return f"{num_txt} / {den_txt}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RationalFunction({self.render()})"


def _is_atomic(p):
    """Single-variable power with coefficient 1 (safe after '/')."""
    if len(p.terms) != 1:
        return False
    (m, c), = p.terms.items()
    if c != 1:
        return False
    return len([e for e in m.exps if e]) == 1


def _coerce_rf(value):
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction(value)


def rf(num, den=1):
    """Shorthand constructor accepting polynomial text."""
    return RationalFunction(num, den)


def poly_total_derivative(p, axis):
    """Total derivative of a primitive polynomial along x or y.

    Symbols are functions of (x, y), so d/dx maps f -> f1, f1 -> f11 and so
    on per the derivation table; second-order symbols cannot be
    differentiated again (OrderCapExceeded).
    """
    if axis not in ("x", "y"):
        raise UsageError("axis must be 'x' or 'y'")
    table = DERIVATION_X if axis == "x" else DERIVATION_Y
    if p.vars != PRIMITIVES:
        raise UsageError("total derivatives are defined over the primitive alphabet")
    result = PRIMITIVES.zero()
    for m, c in p.terms.items():
        for i, e in enumerate(m.exps):
            if not e:
                continue
            name = PRIMITIVE_NAMES[i]
            if name in SECOND_ORDER:
                raise OrderCapExceeded(
                    f"cannot differentiate {name}: the alphabet stops at second order"
                )
            d = table[name]
            if d.is_zero():
                continue
            exps = list(m.exps)
            exps[i] -= 1
            base = Polynomial(PRIMITIVES, {type(m)(tuple(exps)): c * e})
            result = result + base * d
    return result


def total_derivative(value, axis):
    """Quotient-rule total derivative of a rational function along x or y."""
    r = _coerce_rf(value)
    dn = poly_total_derivative(r.num, axis)
    dd = poly_total_derivative(r.den, axis)
    return RationalFunction(dn * r.den - r.num * dd, r.den * r.den)
