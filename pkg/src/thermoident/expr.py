"""Expression grammar for thermodynamic quantities.

Grammar (whitespace-insensitive, left-associative, usual precedence):

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := base ('^' unsigned-integer)?
    base   := number | symbol | 'D(' idx ',' idx ',' idx ')'
            | 'J(' idx ',' idx ';' idx ',' idx ')'
            | 'DD(' idx ',' idx ',' idx ';' idx ',' idx ')' | '(' expr ')'
    idx    := 1..8 | p | V | T | S | Phi | W | F | E

Symbols: the 14 primitives (x, y, f, g, f1, ..., g22), the named values
p, V, T, S (aliases for x, y, f, g), and the named quantities cp, cv,
gamma.  Number literals are integers; fractions are written a/b (ordinary
division of integers).  Decimal literals are rejected: identities are exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, UnsupportedQuantity, UsageError
from . import derivcalc
from .derivcalc import CODE_BY_NAME, DerivTriple, JacobianSpec, SecondDerivSpec
from .ratfun import PRIMITIVE_NAMES, RationalFunction

__all__ = [
    "Expression",
    "Num", "Sym", "EnergyValue", "Named", "Triple", "Jac", "Second",
    "Neg", "BinOp", "Pow",
    "parse", "render", "to_rational", "named_expression",
]


class Expression:
    """Base class for expression tree nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Num(Expression):
    value: Fraction


@dataclass(frozen=True)
class Sym(Expression):
    name: str  # canonical primitive name


@dataclass(frozen=True)
class EnergyValue(Expression):
    code: int  # 5..8; expansion is rejected (no standalone energy values)


@dataclass(frozen=True)
class Named(Expression):
    name: str  # cp | cv | gamma


@dataclass(frozen=True)
class Triple(Expression):
    spec: DerivTriple


@dataclass(frozen=True)
class Jac(Expression):
    spec: JacobianSpec


@dataclass(frozen=True)
class Second(Expression):
    spec: SecondDerivSpec


@dataclass(frozen=True)
class Neg(Expression):
    arg: Expression


@dataclass(frozen=True)
class BinOp(Expression):
    op: str  # + - * /
    lhs: Expression
    rhs: Expression


@dataclass(frozen=True)
class Pow(Expression):
    base: Expression
    exponent: int


SYMBOL_ALIASES = {"p": "x", "V": "y", "T": "f", "S": "g"}
ENERGY_NAMES = {"Phi": 5, "W": 6, "F": 7, "E": 8}
NAMED_QUANTITIES = ("cp", "cv", "gamma")

_TOKEN = re.compile(
    r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^(),;]))"
)


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                rest = text[pos:].lstrip()
                if not rest:
                    break
                at = len(text) - len(rest) + 1
                raise ParseError(f"unexpected character {rest[0]!r}", at)
            if m.group(1):
                raise ParseError(
                    "decimal literals are not allowed in identities", m.start(1) + 1
                )
            if m.group(2):
                self.tokens.append(("int", m.group(2), m.start(2) + 1))
            elif m.group(3):
                self.tokens.append(("name", m.group(3), m.start(3) + 1))
            else:
                self.tokens.append(("op", m.group(4), m.start(4) + 1))
            pos = m.end()
        self.i = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("end", "", len(self.text) + 1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, tok, pos = self.next()
        if kind != "op" or tok != value:
            got = repr(tok) if tok else "end of input"
            raise ParseError(f"expected {value!r}, got {got}", pos)
        return pos


def parse(text):
    """Parse expression text; raises ParseError with a 1-based position."""
    lx = _Lexer(text)
    e = _parse_expr(lx)
    kind, tok, pos = lx.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing token {tok!r}", pos)
    return e


def _parse_expr(lx):
    e = _parse_term(lx)
    while True:
        kind, tok, _ = lx.peek()
        if kind == "op" and tok in "+-":
            lx.next()
            e = BinOp(tok, e, _parse_term(lx))
        else:
            return e


def _parse_term(lx):
    e = _parse_unary(lx)
    while True:
        kind, tok, _ = lx.peek()
        if kind == "op" and tok in "*/":
            lx.next()
            e = BinOp(tok, e, _parse_unary(lx))
        else:
            return e


def _parse_unary(lx):
    kind, tok, _ = lx.peek()
    if kind == "op" and tok == "-":
        lx.next()
        return Neg(_parse_unary(lx))
    return _parse_power(lx)


def _parse_power(lx):
    e = _parse_base(lx)
    kind, tok, _ = lx.peek()
    if kind == "op" and tok == "^":
        lx.next()
        kind, tok, pos = lx.next()
        if kind != "int":
            raise ParseError("exponent must be an unsigned integer", pos)
        return Pow(e, int(tok))
    return e


def _parse_index(lx):
    kind, tok, pos = lx.next()
    if kind == "int":
        code = int(tok)
        if not 1 <= code <= 8:
            raise ParseError(f"quantity index must be 1..8, got {tok}", pos)
        return code, pos
    if kind == "name" and tok in CODE_BY_NAME:
        return CODE_BY_NAME[tok], pos
    raise ParseError(f"invalid quantity index {tok!r}", pos)


def _parse_base(lx):
    kind, tok, pos = lx.next()
    if kind == "int":
        return Num(Fraction(int(tok)))
    if kind == "op" and tok == "(":
        e = _parse_expr(lx)
        lx.expect(")")
        return e
    if kind == "name":
        if tok in ("D", "J", "DD"):
            lx.expect("(")
            if tok == "D":
                a, _ = _parse_index(lx)
                lx.expect(",")
                b, _ = _parse_index(lx)
                lx.expect(",")
                c, cpos = _parse_index(lx)
                lx.expect(")")
                if b == c:
                    raise ParseError("coordinates must be distinct", cpos)
                return Triple(DerivTriple(a, b, c))
            if tok == "J":
                a, _ = _parse_index(lx)
                lx.expect(",")
                b, _ = _parse_index(lx)
                lx.expect(";")
                c, _ = _parse_index(lx)
                lx.expect(",")
                d, dpos = _parse_index(lx)
                lx.expect(")")
                if c == d:
                    raise ParseError("coordinates must be distinct", dpos)
                return Jac(JacobianSpec(a, b, c, d))
            a, _ = _parse_index(lx)
            lx.expect(",")
            b, _ = _parse_index(lx)
            lx.expect(",")
            c, cpos = _parse_index(lx)
            lx.expect(";")
            d, _ = _parse_index(lx)
            lx.expect(",")
            e, epos = _parse_index(lx)
            lx.expect(")")
            if b == c:
                raise ParseError("coordinates must be distinct", cpos)
            if d == e:
                raise ParseError("coordinates must be distinct", epos)
            return Second(SecondDerivSpec(DerivTriple(a, b, c), d, e))
        if tok in NAMED_QUANTITIES:
            return Named(tok)
        if tok in SYMBOL_ALIASES:
            return Sym(SYMBOL_ALIASES[tok])
        if tok in PRIMITIVE_NAMES:
            return Sym(tok)
        if tok in ENERGY_NAMES:
            return EnergyValue(ENERGY_NAMES[tok])
        raise ParseError(f"unknown symbol {tok!r}", pos)
    got = repr(tok) if tok else "end of input"
    raise ParseError(f"unexpected token {got}", pos)


# -- rendering ----------------------------------------------------------------

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def render(e):
    """Deterministic text for an expression; parse(render(e)) == e semantically."""
    return _render(e, 0)


def _render(e, parent_prec):
    if isinstance(e, Num):
        text = str(e.value)
        return f"({text})" if e.value < 0 and parent_prec > 0 else text
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Named):
        return e.name
    if isinstance(e, EnergyValue):
        return derivcalc.QUANTITY_NAMES[e.code]
    if isinstance(e, Triple):
        s = e.spec
        return f"D({s.a},{s.b},{s.c})"
    if isinstance(e, Jac):
        s = e.spec
        return f"J({s.a},{s.b};{s.c},{s.d})"
    if isinstance(e, Second):
        s = e.spec
        return f"DD({s.inner.a},{s.inner.b},{s.inner.c};{s.d},{s.e})"
    if isinstance(e, Neg):
        inner = _render(e.arg, 3)
        text = f"-{inner}"
        return f"({text})" if parent_prec >= 2 else text
    if isinstance(e, Pow):
        return f"{_render(e.base, 3)}^{e.exponent}"
    if isinstance(e, BinOp):
        prec = _PRECEDENCE[e.op]
        left = _render(e.lhs, prec - 1)
        right = _render(e.rhs, prec)
        text = f"{left} {e.op} {right}"
        return f"({text})" if prec <= parent_prec else text
    raise UsageError(f"cannot render {e!r}")


# -- expansion to rational functions ------------------------------------------


def named_expression(name):
    """Expression tree of a named quantity: cv, cp, gamma, cp_minus_cv."""
    T = Sym("f")
    if name == "cv":
        return BinOp("*", T, Triple(DerivTriple(4, 3, 2)))
    if name == "cp":
        return BinOp("*", T, Triple(DerivTriple(4, 3, 1)))
    if name == "gamma":
        return BinOp("/", named_expression("cp"), named_expression("cv"))
    if name == "cp_minus_cv":
        return BinOp("-", named_expression("cp"), named_expression("cv"))
    raise UsageError(f"unknown named quantity: {name!r}")


def to_rational(e, den_sink=None):
    """Expand an expression to a RationalFunction over the primitives.

    den_sink, when given, collects every denominator polynomial the
    expansion relies on (Jacobian denominators and explicit divisions);
    these are the side conditions a prover must assume nonzero.
    """

    def sink(poly):
        if den_sink is not None and not poly.is_constant():
            den_sink.append(poly)

    def walk(e):
        if isinstance(e, Num):
            return RationalFunction(e.value)
        if isinstance(e, Sym):
            return RationalFunction(f"{e.name}")
        if isinstance(e, EnergyValue):
            name = derivcalc.QUANTITY_NAMES[e.code]
            raise UnsupportedQuantity(
                f"{name} is defined only up to a constant; "
                "only its derivatives have values"
            )
        if isinstance(e, Named):
            return walk(named_expression(e.name))
        if isinstance(e, Triple):
            r = derivcalc.deriv_triple(e.spec)
            sink(r.den)
            return r
        if isinstance(e, Jac):
            r = derivcalc.jacobian(e.spec)
            sink(r.den)
            return r
        if isinstance(e, Second):
            r = derivcalc.second_deriv(e.spec)
            sink(r.den)
            return r
        if isinstance(e, Neg):
            return -walk(e.arg)
        if isinstance(e, Pow):
            return walk(e.base) ** e.exponent
        if isinstance(e, BinOp):
            lhs = walk(e.lhs)
            rhs = walk(e.rhs)
            if e.op == "+":
                return lhs + rhs
            if e.op == "-":
                return lhs - rhs
            if e.op == "*":
                return lhs * rhs
            sink(rhs.num)
            return lhs / rhs
        raise UsageError(f"cannot expand {e!r}")

    return walk(e)
