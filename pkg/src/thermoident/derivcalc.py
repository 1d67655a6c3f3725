"""The coded derivative calculus over quantities 1..8.

Quantities: 1 = p (x), 2 = V (y), 3 = T (f), 4 = S (g), and the four energy
potentials 5 = Phi (free enthalpy), 6 = W (enthalpy), 7 = F (free energy),
8 = E (energy), which enter only through their differentials.

A triple (a, b, c) is the derivative of quantity a, seen as a function of
quantities b and c, with respect to b at constant c.  [a, b; c, d] is the
Jacobi determinant of the map (c, d) -> (a, b), and ((a, b, c), d, e) is a
second derivative.  All of them reduce to rational functions of the
primitive alphabet via 2x2 determinants of the base-partial table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DegenerateCoordinates, UsageError
from .polyalg import exact_div
from .ratfun import RationalFunction, poly_total_derivative, prim, total_derivative

__all__ = [
    "QUANTITY_NAMES",
    "CODE_BY_NAME",
    "DerivTriple",
    "JacobianSpec",
    "SecondDerivSpec",
    "validate_code",
    "base_partial",
    "jacobian",
    "deriv_triple",
    "second_deriv",
    "enumerate_specs",
    "SpecStream",
]

QUANTITY_NAMES = {1: "p", 2: "V", 3: "T", 4: "S", 5: "Phi", 6: "W", 7: "F", 8: "E"}
CODE_BY_NAME = {name: code for code, name in QUANTITY_NAMES.items()}

ENERGY_CODES = (5, 6, 7, 8)


def validate_code(value):
    if not isinstance(value, int) or not 1 <= value <= 8:
        raise UsageError(f"quantity code must be an integer in 1..8, got {value!r}")
    return value


@dataclass(frozen=True)
class DerivTriple:
    """(a, b, c): derivative of a as a function of (b, c), along b."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            validate_code(v)
        if self.b == self.c:
            raise UsageError("triple coordinates must be distinct")

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class JacobianSpec:
    """[a, b; c, d]: Jacobi determinant of the map (c, d) -> (a, b)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            validate_code(v)
        if self.c == self.d:
            raise UsageError("Jacobian target coordinates must be distinct")

    def __str__(self):
        return f"[{self.a},{self.b};{self.c},{self.d}]"


@dataclass(frozen=True)
class SecondDerivSpec:
    """((a, b, c), d, e): second derivative of the inner triple."""

    inner: DerivTriple
    d: int
    e: int

    def __post_init__(self):
        validate_code(self.d)
        validate_code(self.e)
        if self.d == self.e:
            raise UsageError("second-derivative coordinates must be distinct")

    def __str__(self):
        return f"(({self.inner.a},{self.inner.b},{self.inner.c}),{self.d},{self.e})"


# Base-partial table: quantity code -> (d/dx, d/dy) as primitive polynomials.
# Rows 5..8 come from the defining one-forms of the energy potentials, e.g.
# dE = u dv - x dy gives (8,1,2) = f*g1 and (8,2,1) = -x + f*g2.
_BASE_TABLE = {
    1: ("1", "0"),
    2: ("0", "1"),
    3: ("f1", "f2"),
    4: ("g1", "g2"),
    5: ("y - g*f1", "-g*f2"),
    6: ("y + f*g1", "f*g2"),
    7: ("-g*f1", "-x - g*f2"),
    8: ("f*g1", "-x + f*g2"),
}
_BASE = {
    (code, axis): prim(text)
    for code, (tx, ty) in _BASE_TABLE.items()
    for axis, text in (("x", tx), ("y", ty))
}


def base_partial(a, axis):
    """The table entry (a,1,2) for axis 'x' or (a,2,1) for axis 'y'."""
    validate_code(a)
    if axis not in ("x", "y"):
        raise UsageError("axis must be 'x' or 'y'")
    return RationalFunction(_BASE[(a, axis)])


def _det(a, b):
    """a_x * b_y - a_y * b_x as a primitive polynomial."""
    return _BASE[(a, "x")] * _BASE[(b, "y")] - _BASE[(a, "y")] * _BASE[(b, "x")]


@lru_cache(maxsize=None)
def jacobian(spec):
    """[a,b;c,d] as a quotient of 2x2 determinants of base partials."""
    if not isinstance(spec, JacobianSpec):
        raise UsageError("jacobian expects a JacobianSpec")
    den = _det(spec.c, spec.d)
    if den.is_zero():
        raise DegenerateCoordinates(f"coordinate map for {spec} has zero Jacobian")
    if spec.a == spec.b:
        return RationalFunction.zero()
    return RationalFunction(_det(spec.a, spec.b), den)


@lru_cache(maxsize=None)
def deriv_triple(t):
    """(a,b,c) = [a,c;b,c]; in particular (b,b,c) = 1 and (c,b,c) = 0."""
    if not isinstance(t, DerivTriple):
        raise UsageError("deriv_triple expects a DerivTriple")
    return jacobian(JacobianSpec(t.a, t.c, t.b, t.c))


@lru_cache(maxsize=None)
def second_deriv(s):
    """((a,b,c),d,e) by the chain rule through the (x, y) coordinates.

    With phi = (a,b,c):
        result = [d_x(phi)*(e,2,1) - d_y(phi)*(e,1,2)]
                 / [(d,1,2)*(e,2,1) - (d,2,1)*(e,1,2)]

    Assembled as a single fraction: with phi = N/D the numerator is
    (N_x D - N D_x)*(e,2,1) - (N_y D - N D_y)*(e,1,2) over D^2 times the
    (d, e) determinant, cancelling known denominator factors by trial
    division before the final normalization.
    """
    if not isinstance(s, SecondDerivSpec):
        raise UsageError("second_deriv expects a SecondDerivSpec")
    det_de = _det(s.d, s.e)
    if det_de.is_zero():
        raise DegenerateCoordinates(f"coordinate map for {s} has zero Jacobian")
    phi = deriv_triple(s.inner)
    n, d = phi.num, phi.den
    nx = poly_total_derivative(n, "x")
    ny = poly_total_derivative(n, "y")
    dx = poly_total_derivative(d, "x")
    dy = poly_total_derivative(d, "y")
    num = (nx * d - n * dx) * _BASE[(s.e, "y")] - (ny * d - n * dy) * _BASE[
        (s.e, "x")
    ]
    num, factors = _cancel_denominator_factors(num, [d, d, det_de])
    den = num.vars.one()
    for f in factors:
        den = den * f
    return RationalFunction(num, den)


def _cancel_denominator_factors(num, factors):
    """Divide num by whichever listed factors divide it exactly.

    Constant factors always divide, so they are folded into the numerator
    rather than kept in the denominator product.
    """
    remaining = []
    for f in factors:
        try:
            num = exact_div(num, f)
        except UsageError:
            remaining.append(f)
    return num, remaining


class SpecStream:
    """Lazy stream of derivative specs of one kind, with its exact count."""

    def __init__(self, kind, count, factory):
        self.kind = kind
        self.count = count
        self._factory = factory

    def __iter__(self):
        return self._factory()

    def __len__(self):
        return self.count


def enumerate_specs(kind):
    """All index-distinct specs: 'triples' (336), 'jacobians' (1680),
    or 'seconds' (18816)."""
    codes = range(1, 9)
    if kind == "triples":
        def gen():
            for a in codes:
                for b in codes:
                    for c in codes:
                        if a != b and a != c and b != c:
                            yield DerivTriple(a, b, c)
        return SpecStream(kind, 8 * 7 * 6, gen)
    if kind == "jacobians":
        def gen():
            for a in codes:
                for b in codes:
                    for c in codes:
                        for d in codes:
                            if len({a, b, c, d}) == 4:
                                yield JacobianSpec(a, b, c, d)
        return SpecStream(kind, 8 * 7 * 6 * 5, gen)
    if kind == "seconds":
        def gen():
            for t in enumerate_specs("triples"):
                for d in codes:
                    for e in codes:
                        if d != e:
                            yield SecondDerivSpec(t, d, e)
        return SpecStream(kind, 8 * 7 * 6 * 8 * 7, gen)
    raise UsageError(f"unknown enumeration kind: {kind!r}")
