"""Closed-form gas models and numeric oracles.

Three models share the coordinate convention u = temperature(x, y),
v = entropy(x, y) with x pressure-like and y volume-like:

  * ideal_gas(gamma):      u = x*y,  v = (ln x + gamma*ln y)/(gamma - 1)
  * van_der_waals(a,b,g):  u = P*Q,  v = (ln P + gamma*ln Q)/(gamma - 1)
                           with P = x + a/y^2, Q = y - b
  * synthesis(coeffs,a,b): u = phi(w), w = P*Q, phi' = 1/(gamma(w) - 1),
                           v = (gamma(w) - 1)*ln Q, gamma a polynomial in w

Each model carries analytic partials up to second order, chosen so that
the area-preservation identity f1*g2 - f2*g1 = 1 holds exactly.  Entropy
is fixed only up to an additive function of u; the gauge each model uses
is recorded in its metadata.  The finite-difference oracles deliberately
ignore the analytic partials and the symbolic tables: they difference the
value functions u and v only, so they can arbitrate the symbolic calculus.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateCoordinates,
    DomainError,
    UnsupportedQuantity,
    UsageError,
)
from . import expr as expr_mod
from .derivcalc import (
    DerivTriple,
    JacobianSpec,
    SecondDerivSpec,
    deriv_triple,
    jacobian,
    second_deriv,
)
from .ratfun import PRIMITIVE_NAMES, RationalFunction

__all__ = [
    "StatePoint",
    "GasModel",
    "JacobianReport",
    "ideal_gas",
    "van_der_waals",
    "synthesis",
    "eval_quantity",
    "oracle_triple",
    "oracle_second",
    "check_jacobian",
]

# Central-difference step scale eps^(1/3); standard truncation/roundoff balance.
_H1 = sys.float_info.epsilon ** (1.0 / 3.0)
# Outer step for differencing through an already-differenced function whose
# noise floor is ~1e-10: h ~ noise^(1/3).
_H2 = 1e-10 ** (1.0 / 3.0)


@dataclass(frozen=True)
class StatePoint:
    """A (pressure-like, volume-like) coordinate pair."""

    x: float
    y: float

    def __str__(self):
        return f"({self.x:g},{self.y:g})"


@dataclass(frozen=True)
class JacobianReport:
    model: str
    states: int
    max_deviation: float
    tol: float
    passed: bool


class GasModel:
    """A gas model: value functions, analytic partials, domain predicate."""

    def __init__(self, name, params, u, v, partials, domain, default_box, gauge):
        self.name = name
        self.params = dict(params)
        self.u = u
        self.v = v
        self._partials = partials  # {symbol: callable(x, y)}
        self._domain = domain
        self.default_box = default_box  # (x0, x1, y0, y1)
        self.gauge = gauge

    def __repr__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({args})"

    def contains(self, s):
        return self._domain(s.x, s.y)

    def require(self, s):
        if not self._domain(s.x, s.y):
            raise DomainError(f"state {s} is outside the domain of {self!r}")

    def value(self, code, s):
        """Numeric value of quantity 1..4 at a state (oracle building block)."""
        self.require(s)
        if code == 1:
            return s.x
        if code == 2:
            return s.y
        if code == 3:
            return self.u(s.x, s.y)
        if code == 4:
            return self.v(s.x, s.y)
        raise UnsupportedQuantity(
            "energy potentials (codes 5-8) have no standalone value"
        )

    def valuation(self, s):
        """Numeric values of all 14 primitive symbols at a state."""
        self.require(s)
        out = {"x": s.x, "y": s.y, "f": self.u(s.x, s.y), "g": self.v(s.x, s.y)}
        for name, fn in self._partials.items():
            out[name] = fn(s.x, s.y)
        return out

    def default_grid(self, n=5):
        x0, x1, y0, y1 = self.default_box
        xs = [x0 + (x1 - x0) * i / (n - 1) for i in range(n)]
        ys = [y0 + (y1 - y0) * i / (n - 1) for i in range(n)]
        return [StatePoint(x, y) for x in xs for y in ys]


def _as_float(value, name):
    try:
        return float(Fraction(value)) if isinstance(value, str) else float(value)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be numeric, got {value!r}") from None


def ideal_gas(gamma):
    """Ideal gas with adiabatic exponent gamma > 1."""
    g = _as_float(gamma, "gamma")
    if not g > 1.0:
        raise UsageError("ideal gas requires gamma > 1")
    gm1 = g - 1.0
    partials = {
        "f1": lambda x, y: y,
        "f2": lambda x, y: x,
        "f11": lambda x, y: 0.0,
        "f12": lambda x, y: 1.0,
        "f22": lambda x, y: 0.0,
        "g1": lambda x, y: 1.0 / (gm1 * x),
        "g2": lambda x, y: g / (gm1 * y),
        "g11": lambda x, y: -1.0 / (gm1 * x * x),
        "g12": lambda x, y: 0.0,
        "g22": lambda x, y: -g / (gm1 * y * y),
    }
    return GasModel(
        name="ideal",
        params={"gamma": g},
        u=lambda x, y: x * y,
        v=lambda x, y: (math.log(x) + g * math.log(y)) / gm1,
        partials=partials,
        domain=lambda x, y: x > 0.0 and y > 0.0,
        default_box=(1.0, 3.0, 1.0, 3.0),
        gauge="u = x*y; v = (ln x + gamma*ln y)/(gamma - 1)",
    )


def van_der_waals(a, b, gamma):
    """Van der Waals gas; reduces exactly to ideal_gas(gamma) at a = b = 0."""
    a = _as_float(a, "a")
    b = _as_float(b, "b")
    g = _as_float(gamma, "gamma")
    if not g > 1.0:
        raise UsageError("van der Waals gas requires gamma > 1")
    if a < 0.0 or b < 0.0:
        raise UsageError("van der Waals parameters a, b must be non-negative")
    gm1 = g - 1.0

    P = lambda x, y: x + a / (y * y)
    Py = lambda x, y: -2.0 * a / (y ** 3)
    Pyy = lambda x, y: 6.0 * a / (y ** 4)
    Q = lambda y: y - b

    partials = {
        "f1": lambda x, y: Q(y),
        "f2": lambda x, y: Py(x, y) * Q(y) + P(x, y),
        "f11": lambda x, y: 0.0,
        "f12": lambda x, y: 1.0,
        "f22": lambda x, y: Pyy(x, y) * Q(y) + 2.0 * Py(x, y),
        "g1": lambda x, y: 1.0 / (gm1 * P(x, y)),
        "g2": lambda x, y: (Py(x, y) / P(x, y) + g / Q(y)) / gm1,
        "g11": lambda x, y: -1.0 / (gm1 * P(x, y) ** 2),
        "g12": lambda x, y: -Py(x, y) / (gm1 * P(x, y) ** 2),
        "g22": lambda x, y: (
            Pyy(x, y) / P(x, y) - (Py(x, y) / P(x, y)) ** 2 - g / Q(y) ** 2
        )
        / gm1,
    }
    return GasModel(
        name="vdw",
        params={"a": a, "b": b, "gamma": g},
        u=lambda x, y: P(x, y) * Q(y),
        v=lambda x, y: (math.log(P(x, y)) + g * math.log(Q(y))) / gm1,
        partials=partials,
        domain=lambda x, y: y > b and y > 0.0 and P(x, y) > 0.0,
        default_box=(1.5, 4.0, b + 0.5, b + 2.5),
        gauge="u = (x + a/y^2)(y - b); v = (ln P + gamma*ln Q)/(gamma - 1)",
    )


def _polyval(coeffs, w):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * w + c
    return acc


def _polyder(coeffs):
    return tuple(k * c for k, c in enumerate(coeffs))[1:] or (0.0,)


def _adaptive_simpson(fn, a, b, tol=1e-10):
    """Recursive adaptive Simpson quadrature of fn over [a, b]."""
    if a == b:
        return 0.0
    if a > b:
        return -_adaptive_simpson(fn, b, a, tol)

    def simpson(lo, hi, flo, fmid, fhi):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, hi, flo, fmid, fhi, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        flm = fn(lmid)
        frm = fn(rmid)
        left = simpson(lo, mid, flo, flm, fmid)
        right = simpson(mid, hi, fmid, frm, fhi)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return recurse(lo, mid, flo, flm, fmid, left, eps / 2.0, depth - 1) + recurse(
            mid, hi, fmid, frm, fhi, right, eps / 2.0, depth - 1
        )

    fa, fb = fn(a), fn(b)
    mid = 0.5 * (a + b)
    fm = fn(mid)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 40)


def synthesis(gamma_coeffs, a=0.0, b=0.0):
    """Gas with state-dependent adiabatic exponent gamma(w), w = P*Q.

    gamma is a polynomial in w given by its coefficients (constant first).
    u = phi(w) with phi' = 1/(gamma(w) - 1) and phi(1) = 0 (evaluated by
    adaptive quadrature); v = (gamma(w) - 1)*ln(y - b).  This construction
    makes f1*g2 - f2*g1 = 1 exact.  a = b = 0 with non-constant gamma is
    the temperature-dependent-exponent ("Feynman") gas; constant gamma
    recovers van der Waals behaviour in a different temperature gauge.
    """
    coeffs = tuple(_as_float(c, "gamma coefficient") for c in gamma_coeffs)
    if not coeffs:
        raise UsageError("gamma polynomial needs at least one coefficient")
    a = _as_float(a, "a")
    b = _as_float(b, "b")
    if a < 0.0 or b < 0.0:
        raise UsageError("parameters a, b must be non-negative")
    dcoeffs = _polyder(coeffs)
    ddcoeffs = _polyder(dcoeffs)

    def gam(w):
        return _polyval(coeffs, w)

    def gam1(w):
        return _polyval(dcoeffs, w)

    def gam2(w):
        return _polyval(ddcoeffs, w)

    if gam(1.0) <= 1.0:
        raise DomainError("gamma(w) must exceed 1 at the reference point w = 1")

    def phi_prime(w):
        gw = gam(w)
        if gw <= 1.0:
            raise DomainError(f"gamma(w) = {gw:g} <= 1 at w = {w:g}")
        return 1.0 / (gw - 1.0)

    def phi(w):
        return _adaptive_simpson(phi_prime, 1.0, w)

    P = lambda x, y: x + a / (y * y)
    Py = lambda x, y: -2.0 * a / (y ** 3)
    Pyy = lambda x, y: 6.0 * a / (y ** 4)
    Q = lambda y: y - b

    def w_of(x, y):
        return P(x, y) * Q(y)

    def wx(x, y):
        return Q(y)

    def wy(x, y):
        return Py(x, y) * Q(y) + P(x, y)

    def wyy(x, y):
        return Pyy(x, y) * Q(y) + 2.0 * Py(x, y)

    def phi2(w):
        return -gam1(w) * phi_prime(w) ** 2

    def f1(x, y):
        return phi_prime(w_of(x, y)) * wx(x, y)

    def f2(x, y):
        return phi_prime(w_of(x, y)) * wy(x, y)

    def f11(x, y):
        return phi2(w_of(x, y)) * wx(x, y) ** 2

    def f12(x, y):
        w = w_of(x, y)
        return phi2(w) * wx(x, y) * wy(x, y) + phi_prime(w)

    def f22(x, y):
        w = w_of(x, y)
        return phi2(w) * wy(x, y) ** 2 + phi_prime(w) * wyy(x, y)

    def g1(x, y):
        return gam1(w_of(x, y)) * wx(x, y) * math.log(Q(y))

    def g2(x, y):
        w = w_of(x, y)
        return gam1(w) * wy(x, y) * math.log(Q(y)) + (gam(w) - 1.0) / Q(y)

    def g11(x, y):
        return gam2(w_of(x, y)) * wx(x, y) ** 2 * math.log(Q(y))

    def g12(x, y):
        w = w_of(x, y)
        return (gam2(w) * wx(x, y) * wy(x, y) + gam1(w)) * math.log(Q(y)) + gam1(
            w
        ) * wx(x, y) / Q(y)

    def g22(x, y):
        w = w_of(x, y)
        return (
            (gam2(w) * wy(x, y) ** 2 + gam1(w) * wyy(x, y)) * math.log(Q(y))
            + 2.0 * gam1(w) * wy(x, y) / Q(y)
            - (gam(w) - 1.0) / Q(y) ** 2
        )

    def domain(x, y):
        if not (y > b and y > 0.0 and P(x, y) > 0.0):
            return False
        return gam(w_of(x, y)) > 1.0

    return GasModel(
        name="synthesis",
        params={"gamma_coeffs": coeffs, "a": a, "b": b},
        u=lambda x, y: phi(w_of(x, y)),
        v=lambda x, y: (gam(w_of(x, y)) - 1.0) * math.log(Q(y)),
        partials={
            "f1": f1, "f2": f2, "f11": f11, "f12": f12, "f22": f22,
            "g1": g1, "g2": g2, "g11": g11, "g12": g12, "g22": g22,
        },
        domain=domain,
        default_box=(1.0, 3.0, b + 0.5, b + 2.5),
        gauge="u = phi(w), phi' = 1/(gamma(w)-1), phi(1) = 0; "
        "v = (gamma(w)-1)*ln(y-b)",
    )


# -- numeric evaluation -------------------------------------------------------


def eval_quantity(model, q, s, den_tol=1e-12):
    """Evaluate a coded quantity or expression numerically at a state."""
    model.require(s)
    r = _as_rational(q)
    return r.evaluate(model.valuation(s), den_tol=den_tol)


def _as_rational(q):
    if isinstance(q, RationalFunction):
        return q
    if isinstance(q, str):
        return expr_mod.to_rational(expr_mod.parse(q))
    if isinstance(q, expr_mod.Expression):
        return expr_mod.to_rational(q)
    if isinstance(q, DerivTriple):
        return deriv_triple(q)
    if isinstance(q, JacobianSpec):
        return jacobian(q)
    if isinstance(q, SecondDerivSpec):
        return second_deriv(q)
    raise UsageError(f"cannot evaluate {q!r}")


def _central(fn, t, h):
    return (fn(t + h) - fn(t - h)) / (2.0 * h)


def _diff(fn, t, scale=1.0):
    """Central difference with one Richardson refinement step."""
    h = _H1 * max(1.0, abs(t)) * scale
    d1 = _central(fn, t, h)
    d2 = _central(fn, t, h / 2.0)
    return (4.0 * d2 - d1) / 3.0


def _quantity_gradient(model, code, s):
    """(d/dx, d/dy) of quantity `code` at s, from value functions only.

    Codes 1..4 are differenced directly.  The energy potentials enter
    through their defining one-forms (e.g. dE = u dv - x dy), with du and
    dv themselves obtained by differencing, so the result never touches
    the analytic partials.
    """
    if code <= 4:
        fn = {
            1: lambda x, y: x,
            2: lambda x, y: y,
            3: model.u,
            4: model.v,
        }[code]
        dx = _diff(lambda t: fn(t, s.y), s.x)
        dy = _diff(lambda t: fn(s.x, t), s.y)
        return dx, dy
    u = model.u(s.x, s.y)
    v = model.v(s.x, s.y)
    ux = _diff(lambda t: model.u(t, s.y), s.x)
    uy = _diff(lambda t: model.u(s.x, t), s.y)
    vx = _diff(lambda t: model.v(t, s.y), s.x)
    vy = _diff(lambda t: model.v(s.x, t), s.y)
    if code == 5:  # dPhi = -v du + y dx
        return s.y - v * ux, -v * uy
    if code == 6:  # dW = u dv + y dx
        return s.y + u * vx, u * vy
    if code == 7:  # dF = -v du - x dy
        return -v * ux, -s.x - v * uy
    # code 8:      dE = u dv - x dy
    return u * vx, u * vy - s.x


def oracle_map_determinant(model, b, c, s):
    """(determinant, magnitude scale) of the differenced Jacobian of the
    map (x, y) -> (quantity_b, quantity_c).  A determinant far below the
    scale marks (b, c) as numerically degenerate coordinates."""
    bx, by = _quantity_gradient(model, b, s)
    cx, cy = _quantity_gradient(model, c, s)
    det = bx * cy - by * cx
    scale = abs(bx * cy) + abs(by * cx) + 1e-30
    return det, scale


def oracle_triple(model, t, s):
    """Finite-difference value of a triple, independent of the symbolic tables.

    Builds the 2x2 Jacobians of (x, y) -> (quantity_a, quantity_c) and
    (x, y) -> (quantity_b, quantity_c) by central differences and returns
    the ratio of their determinants.
    """
    if not isinstance(t, DerivTriple):
        raise UsageError("oracle_triple expects a DerivTriple")
    model.require(s)
    ax, ay = _quantity_gradient(model, t.a, s)
    bx, by = _quantity_gradient(model, t.b, s)
    cx, cy = _quantity_gradient(model, t.c, s)
    den = bx * cy - by * cx
    scale = abs(bx * cy) + abs(by * cx) + 1e-30
    if abs(den) < 1e-10 or abs(den) < 1e-7 * scale:
        raise DegenerateCoordinates(f"numeric Jacobian of ({t.b},{t.c}) is singular")
    return (ax * cy - ay * cx) / den


def oracle_second(model, sd, s):
    """Finite-difference value of a second derivative.

    Differences the numeric inner-triple value with a wider step (the
    inner value itself carries differencing noise), then applies the same
    determinant-ratio construction along the (d, e) coordinates.
    """
    if not isinstance(sd, SecondDerivSpec):
        raise UsageError("oracle_second expects a SecondDerivSpec")
    model.require(s)

    def phi(x, y):
        return oracle_triple(model, sd.inner, StatePoint(x, y))

    hx = _H2 * max(1.0, abs(s.x))
    hy = _H2 * max(1.0, abs(s.y))
    phix = _central(lambda t: phi(t, s.y), s.x, hx)
    phiy = _central(lambda t: phi(s.x, t), s.y, hy)
    dx_, dy_ = _quantity_gradient(model, sd.d, s)
    ex, ey = _quantity_gradient(model, sd.e, s)
    den = dx_ * ey - dy_ * ex
    scale = abs(dx_ * ey) + abs(dy_ * ex) + 1e-30
    if abs(den) < 1e-10 or abs(den) < 1e-7 * scale:
        raise DegenerateCoordinates(
            f"numeric Jacobian of ({sd.d},{sd.e}) is singular"
        )
    return (phix * ey - phiy * ex) / den


def check_jacobian(model, states=None, tol=1e-9):
    """Max deviation of f1*g2 - f2*g1 from 1 over the states; pass iff <= tol."""
    if states is None:
        states = model.default_grid()
    worst = 0.0
    for s in states:
        vals = model.valuation(s)
        dev = abs(vals["f1"] * vals["g2"] - vals["f2"] * vals["g1"] - 1.0)
        worst = max(worst, dev)
    return JacobianReport(
        model=repr(model),
        states=len(states),
        max_deviation=worst,
        tol=tol,
        passed=worst <= tol,
    )
