"""Identity prover and Groebner identity discovery.

An identity LHS = RHS between expressions is proved by expanding both
sides to rational functions of the primitives, cross-multiplying, and
reducing the difference numerator modulo the constraint ideal generated
by the area-preservation polynomial

    M = f1*g2 - f2*g1 - 1

and its two total derivatives MX, MY (needed for second-order identities).
Reduction to zero is sufficient for truth under the constraint, never
necessary: a nonzero normal form downgrades to "refuted" when numeric
evaluation on gas models separates the two sides, else "inconclusive".

The discovery pipeline runs Buchberger on a built-in system of coded
derivative relations (one symbol per triple, x312 meaning (3,1,2)): every
element of the resulting basis, set to zero, is an identity of the
calculus.  A reference basis for that system, computed independently, is
kept for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DegenerateCoordinates, UsageError
from . import expr as expr_mod
from .models import StatePoint, ideal_gas, van_der_waals
from .polyalg import GRLEX, LEX, GroebnerBasis, VariableSet, buchberger, normal_form
from .ratfun import PRIMITIVES, prim, poly_total_derivative

__all__ = [
    "ConstraintSystem",
    "default_constraints",
    "Identity",
    "VerificationReport",
    "verify",
    "named_quantity",
    "maxwell_relations",
    "discover",
    "discovery_system",
    "reference_discovery_basis",
    "cross_check_discovery",
    "default_models",
    "default_states",
    "REFUTATION_RTOL",
    "PROOF_NUMERIC_RTOL",
]

REFUTATION_RTOL = 1e-6
PROOF_NUMERIC_RTOL = 1e-8


class ConstraintSystem:
    """The Maxwell constraint M and its formal x/y prolongations.

    Holds a cached reduced Groebner basis of <M, MX, MY> under grlex; all
    identity proofs are normal-form computations against that basis.
    """

    def __init__(self, order=GRLEX):
        self.order = order
        self.maxwell = prim("f1*g2 - f2*g1 - 1")
        self.prolongation_x = prim("f11*g2 + f1*g12 - f12*g1 - f2*g11")
        self.prolongation_y = prim("f12*g2 + f1*g22 - f22*g1 - f2*g12")
        if poly_total_derivative(self.maxwell, "x") != self.prolongation_x:
            raise UsageError("x-prolongation does not match d/dx of the constraint")
        if poly_total_derivative(self.maxwell, "y") != self.prolongation_y:
            raise UsageError("y-prolongation does not match d/dy of the constraint")
        self.basis = buchberger(
            [self.maxwell, self.prolongation_x, self.prolongation_y], order
        )

    def generators(self):
        return (self.maxwell, self.prolongation_x, self.prolongation_y)

    def reduce(self, p):
        """Normal form of a primitive polynomial modulo the constraint ideal."""
        return self.basis.reduce(p)

    def reduce_rational(self, r):
        """Canonical constrained representative: reduce numerator and
        denominator separately; a denominator in the ideal is degenerate."""
        from .ratfun import RationalFunction

        num = self.reduce(r.num)
        den = self.reduce(r.den)
        if den.is_zero():
            raise DegenerateCoordinates(
                "denominator lies in the constraint ideal (vanishes when J = 1)"
            )
        return RationalFunction(num, den)


@lru_cache(maxsize=None)
def default_constraints():
    return ConstraintSystem()


@dataclass(frozen=True)
class Identity:
    """Two expressions asserted equal, with a free-text provenance label."""

    lhs: expr_mod.Expression
    rhs: expr_mod.Expression
    label: str = ""
    text: str = ""

    @classmethod
    def parse(cls, line, label=""):
        if line.count("=") != 1:
            raise UsageError(f"an identity needs exactly one '=': {line!r}")
        lhs_text, rhs_text = line.split("=")
        return cls(
            lhs=expr_mod.parse(lhs_text),
            rhs=expr_mod.parse(rhs_text),
            label=label,
            text=line.strip(),
        )

    def rendered(self):
        return self.text or f"{expr_mod.render(self.lhs)} = {expr_mod.render(self.rhs)}"


@dataclass
class VerificationReport:
    """Outcome of verify(): symbolic reduction plus numeric residuals."""

    identity: Identity
    status: str  # proved | refuted | inconclusive
    reduced_difference: object  # Polynomial
    side_conditions: list = field(default_factory=list)
    numeric_residuals: list = field(default_factory=list)  # (model, state, residual)

    @property
    def proved(self):
        return self.status == "proved"

    def max_residual(self):
        return max((r for _, _, r in self.numeric_residuals), default=0.0)

    def as_text(self):
        lines = [
            f"identity: {self.identity.rendered()}",
            f"status: {self.status}",
            f"reduced_difference: {self.reduced_difference}",
        ]
        if self.identity.label:
            lines.insert(1, f"label: {self.identity.label}")
        conds = ", ".join(str(c) for c in self.side_conditions) or "none"
        lines.append(f"side_conditions: {conds}")
        if self.numeric_residuals:
            lines.append("residuals:")
            for model, state, res in self.numeric_residuals:
                lines.append(f"  {model} {state}: {res:.3e}")
            lines.append(f"max_residual: {self.max_residual():.3e}")
        return "\n".join(lines)

    def as_dict(self):
        return {
            "identity": self.identity.rendered(),
            "label": self.identity.label,
            "status": self.status,
            "reduced_difference": str(self.reduced_difference),
            "side_conditions": [str(c) for c in self.side_conditions],
            "residuals": [
                {"model": m, "state": [s.x, s.y], "residual": r}
                for m, s, r in self.numeric_residuals
            ],
        }


def default_models():
    return [
        ideal_gas(5 / 3),
        ideal_gas(7 / 5),
        van_der_waals(1.0, 0.5, 7 / 5),
    ]


def default_states():
    return [StatePoint(x, y) for x in (1.5, 2.0, 3.0) for y in (1.0, 2.0, 3.0)]


def verify(identity, models=None, states=None, constraints=None):
    """Prove, refute, or leave inconclusive one identity.

    Proof: the cross-multiplied difference numerator reduces to zero
    modulo the constraint ideal.  Otherwise both sides are evaluated on
    every (model, state); a relative disagreement beyond REFUTATION_RTOL
    refutes, agreement everywhere leaves the identity inconclusive.
    """
    cs = constraints or default_constraints()
    if models is None:
        models = default_models()
    if states is None:
        states = default_states()

    sink = []
    lhs = expr_mod.to_rational(identity.lhs, sink)
    rhs = expr_mod.to_rational(identity.rhs, sink)
    sink.extend([lhs.den, rhs.den])

    side_conditions = []
    seen = set()
    for d in sink:
        if d.is_constant():
            continue
        key = str(d)
        if key in seen:
            continue
        seen.add(key)
        if cs.reduce(d).is_zero():
            raise DegenerateCoordinates(
                f"denominator {d} vanishes modulo the constraint ideal"
            )
        side_conditions.append(d)

    difference = lhs.num * rhs.den - rhs.num * lhs.den
    reduced = cs.reduce(difference)

    residuals = []
    refuted = False
    for model in models:
        for s in states:
            if not model.contains(s):
                continue
            vals = model.valuation(s)
            lv = lhs.evaluate(vals)
            rv = rhs.evaluate(vals)
            res = abs(lv - rv)
            residuals.append((repr(model), s, res))
            if res > REFUTATION_RTOL * (1.0 + abs(lv) + abs(rv)):
                refuted = True

    if reduced.is_zero():
        status = "proved"
    elif refuted:
        status = "refuted"
    else:
        status = "inconclusive"
    return VerificationReport(
        identity=identity,
        status=status,
        reduced_difference=reduced,
        side_conditions=side_conditions,
        numeric_residuals=residuals,
    )


def named_quantity(name):
    """Expression for cv, cp, gamma, or cp_minus_cv.

    gamma is cp/cv = f1*g2/(f2*g1), the form that evaluates to the
    adiabatic exponent on the ideal gas; the reciprocal f2*g1/(f1*g2),
    sometimes quoted for it, evaluates to 1/gamma instead.
    """
    if name not in ("cv", "cp", "gamma", "cp_minus_cv"):
        raise UsageError(f"unknown named quantity: {name!r}")
    return expr_mod.named_expression(name)


def maxwell_relations():
    """The four Maxwell identities in coded form, each provable under J = 1."""
    rows = [
        ("D(3,1,4) = D(2,4,1)", "dT/dp|S = dV/dS|p  (common value 1/g2)"),
        ("D(3,2,4) = -D(1,4,2)", "dT/dV|S = -dp/dS|V  (common value -1/g1)"),
        ("D(4,2,3) = D(1,3,2)", "dS/dV|T = dp/dT|V  (common value 1/f1)"),
        ("D(4,1,3) = -D(2,3,1)", "dS/dp|T = -dV/dT|p  (common value -1/f2)"),
    ]
    return [Identity.parse(text, label) for text, label in rows]


# -- Groebner discovery pipeline ----------------------------------------------

# Variables of the built-in discovery system, in precedence order.  xABC
# codes the triple (A,B,C); x1..x4 are the base quantities themselves.
_DISCOVERY_VARS = (
    "x1", "x2", "x3", "x4",
    "x112", "x121", "x212", "x221",
    "x312", "x321", "x412", "x421",
    "x134", "x143", "x234", "x243",
    "x341", "x314", "x241", "x214",
    "x342", "x324", "x142", "x124",
    "x432", "x423", "x132", "x123",
    "x431", "x413", "x231", "x213",
    "x512", "x521", "x612", "x621",
    "x712", "x721", "x812", "x821",
)

# The relations: the Maxwell constraint in coded form, the reciprocal and
# ratio laws among first-order triples, and the energy-potential rows of
# the base-partial table.  Each expression is understood as "= 0".
_DISCOVERY_RELATIONS = (
    "x312*x421 - x321*x412 - 1",
    "x134 - x421",
    "x143 + x321",
    "x234 + x412",
    "x243 - x312",
    "x421*x341 - x321",
    "x314*x421 - 1",
    "x241*x421 - 1",
    "x214*x421 + x412",
    "x342*x412 - x312",
    "x324*x412 + 1",
    "x412*x142 - 1",
    "x124*x412 + x421",
    "x432*x312 - x412",
    "x423*x312 - 1",
    "x132*x312 - 1",
    "x123*x312 + x321",
    "x431*x321 - x421",
    "x413*x321 + 1",
    "x231*x321 - 1",
    "x213*x321 + x312",
    "x612 - x2 - x3*x412",
    "x621 - x3*x421",
    "x512 - x2 + x4*x312",
    "x521 + x4*x321",
    "x712 + x4*x312",
    "x721 + x1 + x4*x321",
    "x812 - x3*x412",
    "x821 + x1 - x3*x421",
)

# Reference basis for the built-in system (independent cross-check fixture).
_DISCOVERY_REFERENCE = (
    "x213*x621 + x712 + x213*x721 - x213*x821",
    "x521 - x621 - x721 + x821",
    "x512 - x612 - x712 + x812",
    "x231 + x413",
    "-x231^2*x621 + x431*x712 + x213*x431*x721 - x431*x812 - x213*x431*x821",
    "-1 + x123*x213",
    "x621 + x123*x712 + x721 - x821",
    "x123*x231^2*x621 + x431*x621 + x123*x431*x812",
    "x132 + x123*x231",
    "x123*x231 + x423",
    "-x123*x231^2 - x431 + x432",
    "x621 + x124*x812",
    "x124*x231^2 - x431 + x124*x213*x431",
    "x123*x124*x231^2 - x123*x431 + x124*x431",
    "1 - x124*x213 + x142*x231",
    "x124*x231 + x142*x431",
    "x142 + x324",
    "x342*x712 + x213*x342*x721 + x142^2*x213*x812 - x342*x812 - x213*x342*x821",
    "x142*x213 + x231*x342",
    "-x124*x213 + x342*x431",
    "x342*x621 - x142^2*x812 + x123*x342*x812",
    "x142^2 - x123*x342 + x124*x342",
    "x214*x712 + x213*x214*x721 - x213*x812 - x213*x214*x821",
    "x214*x621 + x812",
    "-x231^2 - x213*x431 + x214*x431",
    "-1 + x124*x214",
    "-x142^2*x213*x214 - x213*x342 + x214*x342",
    "x142*x214 + x241",
    "x142*x214 + x314",
    "-x142^2*x214 + x341 - x342",
    "x243*x712 + x213*x243*x721 + x142*x213*x812 - x243*x812 - x213*x243*x821",
    "x213 + x231*x243",
    "x243*x621 - x142*x812 + x123*x243*x812",
    "x142 - x123*x243 + x124*x243",
    "x142*x243 - x342",
    "-x142*x213*x214 - x213*x243 + x214*x243",
    "-x231 + x234 + x243*x431",
    "x143 - x123*x243",
    "x134 + x123*x243*x431",
    "x421 + x123*x243*x431",
    "x231 + x412 - x243*x431",
    "x123*x243 + x321",
    "-x243 + x312",
    "x4 + x231*x621 + x231*x721 - x231*x821",
    "x3 - x142*x812",
    "x2 - x612 + x812",
    "x1 - x621 + x821",
)


@lru_cache(maxsize=None)
def discovery_system():
    """(VariableSet, relations) of the built-in discovery system."""
    varset = VariableSet(_DISCOVERY_VARS)
    return varset, tuple(varset.poly(t) for t in _DISCOVERY_RELATIONS)


@lru_cache(maxsize=None)
def reference_discovery_basis():
    """The reference output basis as polynomials over the discovery variables."""
    varset, _ = discovery_system()
    return tuple(varset.poly(t) for t in _DISCOVERY_REFERENCE)


def discover(relations=None, varset=None, order=LEX):
    """Groebner basis of a relation system; every element is an identity.

    With no arguments, runs the built-in coded-derivative system under lex
    in the declared variable order.
    """
    if relations is None:
        varset, relations = discovery_system()
    if varset is None:
        raise UsageError("discover needs a variable set with explicit relations")
    for r in relations:
        if r.vars != varset:
            raise UsageError("relations must live over the given variable set")
    return buchberger(list(relations), order)


def cross_check_discovery(basis=None):
    """Ideal equality between a computed discovery basis and the reference.

    Returns (ok, forward_failures, backward_failures): forward counts
    reference polynomials not reducing to zero modulo the basis, backward
    counts basis elements not in the ideal of the reference set.
    """
    if basis is None:
        basis = discover()
    reference = reference_discovery_basis()
    forward = sum(1 for p in reference if not basis.contains(p))
    ref_basis = buchberger(list(reference), basis.order)
    backward = sum(1 for g in basis.generators if not ref_basis.contains(g))
    return forward == 0 and backward == 0, forward, backward
