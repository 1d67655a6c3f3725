"""Exact multivariate polynomial arithmetic over the rationals.

A Polynomial is a finite map monomial -> Fraction over a fixed VariableSet
whose listing order fixes variable precedence.  Lex and graded-lex monomial
orders drive multivariate division, S-polynomials and Buchberger's
algorithm; buchberger() returns the reduced Groebner basis, which is unique
for a given ideal and order.  Coefficients are exact rationals throughout;
floats never enter this module.
"""

from __future__ import annotations

import heapq
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, ParseError, UsageError

__all__ = [
    "VariableSet",
    "Monomial",
    "Polynomial",
    "MonomialOrder",
    "LEX",
    "GRLEX",
    "GroebnerBasis",
    "normal_form",
    "s_polynomial",
    "buchberger",
    "is_member",
    "poly_gcd",
    "exact_div",
    "parse_polynomial",
    "parse_relation_file",
]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class VariableSet:
    """Ordered set of distinct variable names; list position is precedence."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise UsageError("variable set must not be empty")
        for n in names:
            if not _NAME_RE.match(n):
                raise UsageError(f"invalid variable name: {n!r}")
        if len(set(names)) != len(names):
            raise UsageError("variable names must be distinct")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableSet({list(self.names)!r})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown variable: {name!r}") from None

    def monomial(self, exponents=None):
        """Build a Monomial from a {name_or_index: exponent} mapping."""
        exps = [0] * len(self.names)
        for key, e in (exponents or {}).items():
            i = key if isinstance(key, int) else self.index(key)
            if not 0 <= i < len(exps):
                raise UsageError(f"variable index out of range: {i}")
            if e < 0:
                raise UsageError("exponents must be non-negative")
            exps[i] = e
        return Monomial(tuple(exps))

    def var(self, name, power=1):
        """The polynomial consisting of a single variable (to a power)."""
        return Polynomial(self, {self.monomial({name: power}): Fraction(1)})

    def const(self, value):
        value = Fraction(value)
        if value == 0:
            return self.zero()
        return Polynomial(self, {self.monomial(): value})

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def poly(self, text):
        """Parse polynomial text over this variable set."""
        return parse_polynomial(text, self)


class Monomial:
    """Exponent vector over a variable set (dense tuple, no negative entries)."""

    __slots__ = ("exps", "degree")

    def __init__(self, exps):
        self.exps = exps
        self.degree = sum(exps)

    def __eq__(self, other):
        return self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return f"Monomial{self.exps}"

    @property
    def exponents(self):
        """Sparse view: {variable index: exponent}, zero entries omitted."""
        return {i: e for i, e in enumerate(self.exps) if e}

    def is_one(self):
        return self.degree == 0

    def __mul__(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __truediv__(self, other):
        exps = tuple(a - b for a, b in zip(self.exps, other.exps))
        if any(e < 0 for e in exps):
            raise UsageError("monomial division with negative exponent")
        return Monomial(exps)

    def lcm(self, other):
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def coprime(self, other):
        return all(a == 0 or b == 0 for a, b in zip(self.exps, other.exps))

    def render(self, vars):
        if self.degree == 0:
            return "1"
        parts = []
        for i, e in enumerate(self.exps):
            if e == 1:
                parts.append(vars.names[i])
            elif e > 1:
                parts.append(f"{vars.names[i]}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative monomial order: 'lex' or 'grlex' (graded lex)."""

    kind: str

    def __post_init__(self):
        if self.kind not in ("lex", "grlex"):
            raise UsageError(f"unknown monomial order: {self.kind!r}")

    def key(self, m):
        if self.kind == "lex":
            return m.exps
        return (m.degree, m.exps)


LEX = MonomialOrder("lex")
GRLEX = MonomialOrder("grlex")


class Polynomial:
    """Immutable multivariate polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = vars
        self.terms = {m: c for m, c in terms.items() if c != 0}

    # -- basic queries ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(m.is_one() for m in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise UsageError("polynomial is not constant")
        for c in self.terms.values():
            return c
        return Fraction(0)

    def total_degree(self):
        return max((m.degree for m in self.terms), default=0)

    def degree_in(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.vars.index(name_or_index)
        return max((m.exps[i] for m in self.terms), default=0)

    def variables_present(self):
        present = set()
        for m in self.terms:
            for i, e in enumerate(m.exps):
                if e:
                    present.add(i)
        return present

    def leading_term(self, order):
        """(monomial, coefficient) maximal under the order; errors on zero."""
        if not self.terms:
            raise UsageError("the zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    # -- arithmetic -------------------------------------------------------

    def _check_vars(self, other):
        if self.vars != other.vars:
            raise UsageError("operands use different variable sets")

    def __add__(self, other):
        self._check_vars(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial(self.vars, terms)

    def __sub__(self, other):
        self._check_vars(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) - c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial(self.vars, terms)

    def __neg__(self):
        return Polynomial(self.vars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        self._check_vars(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial(self.vars, terms)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return self.vars.zero()
        return Polynomial(self.vars, {m: coef * c for m, coef in self.terms.items()})

    def mul_term(self, monomial, coeff):
        if coeff == 0:
            return self.vars.zero()
        return Polynomial(self.vars, {m * monomial: c * coeff for m, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise UsageError("polynomial power must be a non-negative integer")
        result = self.vars.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- evaluation and rendering ------------------------------------------

    def evaluate(self, values):
        """Substitute numeric values ({name: number}) for every variable."""
        total = 0
        names = self.vars.names
        for m, c in self.terms.items():
            prod = c
            for i, e in enumerate(m.exps):
                if e:
                    prod = prod * values[names[i]] ** e
            total = total + prod
        return total

    def content(self):
        """Positive rational content (gcd of numerators / lcm of denominators)."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self, order=GRLEX):
        """Scale to coprime integer coefficients with positive leading one."""
        if not self.terms:
            return self
        c = self.content()
        _, lc = self.leading_term(order)
        if lc < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self, order):
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        return self.scale(1 / lc)

    def render(self, order=GRLEX):
        if not self.terms:
            return "0"
        monos = sorted(self.terms, key=order.key, reverse=True)
        out = []
        for i, m in enumerate(monos):
            c = self.terms[m]
            mtxt = m.render(self.vars)
            if m.is_one():
                body = str(abs(c))
            elif abs(c) == 1:
                body = mtxt
            else:
                body = f"{abs(c)}*{mtxt}"
            if i == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(out)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.render()})"


# -- division, S-polynomials, Buchberger -----------------------------------


def _prepare_divisors(divisors, order):
    prepared = []
    for d in divisors:
        if d.is_zero():
            raise UsageError("divisors must be nonzero")
        lm, lc = d.leading_term(order)
        rest = [(m, c) for m, c in d.terms.items() if m is not lm and m != lm]
        prepared.append((lm, lc, rest))
    return prepared

def _reduce_terms(terms, prepared, order):
    """Full remainder of a term dict modulo prepared divisors."""
    work = dict(terms)
    remainder = {}
    key = order.key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, lc, rest in prepared:
            if lm.divides(m):
                q = m / lm
                factor = c / lc
                for md, cd in rest:
                    mm = md * q
                    s = work.get(mm, 0) - factor * cd
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                break
        else:
            remainder[m] = c
    return remainder


def normal_form(p, divisors, order=GRLEX):
    """Remainder of multivariate division of p by the divisor list.

    No term of the result is divisible by any divisor's leading term, and
    p minus the result lies in the ideal generated by the divisors.  Ties
    go to the first divisor in list order, so the result is deterministic
    for a fixed list.  An empty divisor list returns p unchanged.
    """
    divisors = list(divisors)
    if not divisors:
        return p
    for d in divisors:
        if d.vars != p.vars:
            raise UsageError("divisors must share the polynomial's variable set")
    prepared = _prepare_divisors(divisors, order)
    return Polynomial(p.vars, _reduce_terms(p.terms, prepared, order))


def s_polynomial(p, q, order=GRLEX):
    """S(p, q) = (L/lt(p)) p - (L/lt(q)) q, L = lcm of leading monomials."""
    if p.is_zero() or q.is_zero():
        raise UsageError("s_polynomial requires nonzero inputs")
    p._check_vars(q)
    lm_p, lc_p = p.leading_term(order)
    lm_q, lc_q = q.leading_term(order)
    lcm = lm_p.lcm(lm_q)
    left = p.mul_term(lcm / lm_p, 1 / lc_p)
    right = q.mul_term(lcm / lm_q, 1 / lc_q)
    return left - right


@dataclass(frozen=True)
class GroebnerBasis:
    """Generators of an ideal whose leading terms generate its leading ideal."""

    generators: tuple
    order: MonomialOrder
    reduced: bool = True

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def reduce(self, p):
        return normal_form(p, self.generators, self.order)

    def contains(self, p):
        return self.reduce(p).is_zero()


def buchberger(generators, order=GRLEX):
    """Reduced Groebner basis of the ideal generated by the input.

    Pair selection follows the normal strategy (smallest lcm of leading
    monomials under the active order); pairs with coprime leading monomials
    are skipped.  The final basis is autoreduced, monic, and sorted by
    ascending leading monomial, hence unique for the ideal and order.
    """
    gens = [g for g in generators]
    if not gens:
        raise UsageError("buchberger requires at least one generator")
    vars = gens[0].vars
    for g in gens:
        if g.is_zero():
            raise UsageError("generators must be nonzero")
        if g.vars != vars:
            raise UsageError("generators must share one variable set")

    basis = []
    leads = []
    pairs = []

    def push(g):
        g = g.primitive(order)
        i = len(basis)
        lm, _ = g.leading_term(order)
        for j in range(i):
            heapq.heappush(pairs, (order.key(leads[j].lcm(lm)), j, i))
        basis.append(g)
        leads.append(lm)

    for g in gens:
        push(g)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        if leads[i].coprime(leads[j]):
            continue
        s = s_polynomial(basis[i], basis[j], order)
        if s.is_zero():
            continue
        prepared = _prepare_divisors(basis, order)
        r = Polynomial(vars, _reduce_terms(s.terms, prepared, order))
        if not r.is_zero():
            push(r)

    return _autoreduce(basis, order)


def _autoreduce(basis, order):
    """Minimalize and interreduce a Groebner basis; make generators monic."""
    items = [(g.leading_term(order)[0], g) for g in basis]
    minimal = []
    for lm, g in items:
        if any(other.divides(lm) for other, _ in minimal if other != lm):
            continue
        if any(other == lm for other, _ in minimal):
            continue
        minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [h for j, (_, h) in enumerate(minimal) if j != idx]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero():
            reduced.append(r.monic(order))
    reduced.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    # Interreduction can change leading terms; iterate until stable.
    changed = True
    while changed:
        changed = False
        for i in range(len(reduced)):
            others = reduced[:i] + reduced[i + 1 :]
            r = normal_form(reduced[i], others, order) if others else reduced[i]
            if r.is_zero():
                reduced.pop(i)
                changed = True
                break
            r = r.monic(order)
            if r != reduced[i]:
                reduced[i] = r
                changed = True
        if changed:
            reduced.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    return GroebnerBasis(tuple(reduced), order, True)


def is_member(p, basis):
    """True iff p lies in the ideal presented by the Groebner basis."""
    return basis.contains(p)


# -- multivariate gcd (recursive content / primitive-part) ------------------


def exact_div(p, d, order=GRLEX):
    """Exact polynomial quotient p / d; raises if d does not divide p."""
    if d.is_zero():
        raise DivisionByZero("exact division by the zero polynomial")
    p._check_vars(d)
    if p.is_zero():
        return p
    lm_d, lc_d = d.leading_term(order)
    work = dict(p.terms)
    quotient = {}
    key = order.key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        if not lm_d.divides(m):
            raise UsageError("polynomial division is not exact")
        q = m / lm_d
        factor = c / lc_d
        quotient[q] = quotient.get(q, 0) + factor
        for md, cd in d.terms.items():
            if md == lm_d:
                continue
            mm = md * q
            s = work.get(mm, 0) - factor * cd
            if s:
                work[mm] = s
            else:
                work.pop(mm, None)
    return Polynomial(p.vars, quotient)


def _coeffs_wrt(p, i):
    """Coefficients of p as a polynomial in variable i: {power: Polynomial}."""
    buckets = {}
    for m, c in p.terms.items():
        k = m.exps[i]
        rest = list(m.exps)
        rest[i] = 0
        rm = Monomial(tuple(rest))
        bucket = buckets.setdefault(k, {})
        bucket[rm] = bucket.get(rm, 0) + c
    return {k: Polynomial(p.vars, t) for k, t in buckets.items()}

def _from_coeffs(vars, i, coeffs):
    terms = {}
    for k, poly in coeffs.items():
        for m, c in poly.terms.items():
            exps = list(m.exps)
            exps[i] += k
            mm = Monomial(tuple(exps))
            terms[mm] = terms.get(mm, 0) + c
    return Polynomial(vars, terms)


def _prem(p, q, i):
    """Pseudo-remainder of p by q with respect to variable i."""
    dq = q.degree_in(i)
    cq = _coeffs_wrt(q, i)
    lc_q = cq[dq]
    r = p
    while not r.is_zero() and r.degree_in(i) >= dq:
        dr = r.degree_in(i)
        cr = _coeffs_wrt(r, i)
        lc_r = cr[dr]
        shift = p.vars.monomial({i: dr - dq})
        r = r * lc_q - q.mul_term(shift, Fraction(1)) * lc_r
    return r


def poly_gcd(p, q):
    """Greatest common divisor, normalized to coprime integer coefficients
    with positive leading coefficient (grlex).

    Fast paths first: common monomial factor; then sound per-variable
    degree bounds from modular univariate projections, which settle the
    (dominant) coprime case outright.  A heuristic evaluate-lift-verify gcd
    covers small variable counts; the general case falls back to a
    primitive pseudo-remainder sequence.
    """
    p._check_vars(q)
    if p.is_zero() and q.is_zero():
        return p
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    p = p.primitive()
    q = q.primitive()
    if p.is_constant() or q.is_constant():
        return p.vars.one()

    mp = _common_monomial(p)
    mq = _common_monomial(q)
    if mp.degree or mq.degree:
        mono = Monomial(tuple(min(a, b) for a, b in zip(mp.exps, mq.exps)))
        inner = poly_gcd(
            Polynomial(p.vars, _shift_terms(p, mp)),
            Polynomial(q.vars, _shift_terms(q, mq)),
        )
        if mono.degree:
            inner = inner * Polynomial(p.vars, {mono: Fraction(1)})
        return inner.primitive()

    common = p.variables_present() & q.variables_present()
    if not common:
        return p.vars.one()

    bounds = _gcd_degree_bounds(p, q, common)
    if all(b == 0 for b in bounds.values()):
        return p.vars.one()

    if len(p.variables_present() | q.variables_present()) <= 4:
        g = _heugcd(p, q, [24])
        if g is not None:
            return g.primitive()
    return _prs_gcd(p, q, bounds).primitive()


def _common_monomial(p):
    """Largest monomial dividing every term of p."""
    exps = None
    for m in p.terms:
        if exps is None:
            exps = list(m.exps)
        else:
            exps = [min(a, b) for a, b in zip(exps, m.exps)]
        if not any(exps):
            break
    return Monomial(tuple(exps))


_GCD_PRIME = (1 << 31) - 1


def _project_univariate(p, v, point, prime):
    """Coefficient list of p in variable v after substituting the point
    (mod prime) for every other variable; ascending by degree."""
    coeffs = [0] * (p.degree_in(v) + 1)
    for m, c in p.terms.items():
        val = c.numerator % prime
        for u, e in enumerate(m.exps):
            if e and u != v:
                val = val * pow(point[u], e, prime) % prime
        k = m.exps[v]
        coeffs[k] = (coeffs[k] + val) % prime
    return coeffs


def _univariate_gcd_mod(a, b, prime):
    """Monic gcd of two coefficient lists over Z_prime (ascending degree)."""

    def strip(c):
        while c and c[-1] == 0:
            c.pop()
        return c

    a = strip(list(a))
    b = strip(list(b))
    while b:
        inv = pow(b[-1], prime - 2, prime)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            factor = a[-1] * inv % prime
            shift = len(a) - 1 - db
            for i, bc in enumerate(b):
                a[i + shift] = (a[i + shift] - factor * bc) % prime
            strip(a)
        a, b = b, a
    inv = pow(a[-1], prime - 2, prime)
    return [c * inv % prime for c in a]


def _gcd_degree_bounds(p, q, common):
    """Sound per-variable upper bounds for the degree of gcd(p, q).

    For each common variable v, project both polynomials to univariate in
    v at a random point mod a prime.  When both leading coefficients
    survive the projection, every common factor keeps its v-degree, so
    deg of the projected gcd bounds deg_v(gcd) from above.  Degenerate
    projections are retried; persistent degeneracy leaves the bound at
    the trivial min of the input degrees.
    """
    rng = random.Random(0x1DEA1)
    prime = _GCD_PRIME
    allvars = p.variables_present() | q.variables_present()
    bounds = {}
    for v in sorted(common):
        dp = p.degree_in(v)
        dq = q.degree_in(v)
        bounds[v] = min(dp, dq)
        for _ in range(4):
            point = {u: rng.randrange(1, prime) for u in allvars if u != v}
            pu = _project_univariate(p, v, point, prime)
            qu = _project_univariate(q, v, point, prime)
            if pu[dp] == 0 or qu[dq] == 0:
                continue
            g = _univariate_gcd_mod(pu, qu, prime)
            bounds[v] = len(g) - 1
            break
    return bounds


def _shift_terms(p, mono):
    return {m / mono: c for m, c in p.terms.items()}


def _maxnorm(p):
    return max(abs(c.numerator) for c in p.terms.values())


def _eval_var(p, i, xi):
    """Substitute the integer xi for variable i (exact)."""
    terms = {}
    for m, c in p.terms.items():
        e = m.exps[i]
        if e:
            exps = list(m.exps)
            exps[i] = 0
            mm = Monomial(tuple(exps))
            c = c * xi ** e
        else:
            mm = m
        s = terms.get(mm, 0) + c
        if s:
            terms[mm] = s
        else:
            terms.pop(mm, None)
    return Polynomial(p.vars, terms)


def _lift_digits(h, i, xi):
    """Reconstruct a polynomial in variable i from balanced base-xi digits."""
    vars = h.vars
    out = {}
    k = 0
    half = xi // 2
    while not h.is_zero():
        if k > 512:
            return None
        new_terms = {}
        for m, c in h.terms.items():
            c = int(c)
            r = c % xi
            if r > half:
                r -= xi
            if r:
                exps = list(m.exps)
                exps[i] += k
                out[Monomial(tuple(exps))] = Fraction(r)
            rest = (c - r) // xi
            if rest:
                new_terms[m] = Fraction(rest)
        h = Polynomial(vars, new_terms)
        k += 1
    return Polynomial(vars, out)


def _divides_exactly(g, p):
    try:
        exact_div(p, g)
        return True
    except (UsageError, DivisionByZero):
        return False


def _heugcd(p, q, budget):
    """Heuristic gcd of integer-primitive polynomials; None on failure.

    Evaluates variables at large integers, takes the gcd of the images,
    and lifts it back through balanced base-xi digits; candidates are
    verified by exact trial division, so a non-None answer is correct.
    Only worthwhile for few variables (integer size grows per level).
    """
    present = p.variables_present() | q.variables_present()
    if not present:
        a = int(p.constant_value())
        b = int(q.constant_value())
        return p.vars.const(math.gcd(a, b))
    if budget[0] <= 0:
        return None
    # Evaluate out the variable of smallest combined degree.
    i = min(present, key=lambda j: max(p.degree_in(j), q.degree_in(j)))
    xi = 2 * min(_maxnorm(p), _maxnorm(q)) + 29
    for _ in range(6):
        budget[0] -= 1
        if budget[0] < 0:
            return None
        if xi.bit_length() * (max(p.degree_in(i), q.degree_in(i)) + 1) > 100_000:
            return None
        pe = _eval_var(p, i, xi)
        qe = _eval_var(q, i, xi)
        if pe.is_zero() or qe.is_zero():
            xi = xi * 73794 // 27011 + 17
            continue
        h = _heugcd(pe, qe, budget)
        if h is not None and not h.is_zero():
            g = _lift_digits(h, i, xi)
            if g is not None and not g.is_zero():
                g = g.primitive()
                if _divides_exactly(g, p) and _divides_exactly(g, q):
                    return g
        xi = xi * 73794 // 27011 + 17
    return None


def _prs_gcd(p, q, bounds=None):
    """Primitive pseudo-remainder-sequence gcd (fallback path).

    The main variable is taken from the gcd's known support (smallest
    positive degree bound) so the sequence works where the factor lives.
    """
    common = p.variables_present() & q.variables_present()
    if not common:
        return p.vars.one()
    if bounds:
        positive = [v for v in common if bounds.get(v, 1) > 0]
        main = min(positive, key=lambda v: bounds[v]) if positive else min(common)
    else:
        main = min(common)
    cp, pp_p = _content_primitive(p, main)
    cq, pp_q = _content_primitive(q, main)
    cont = poly_gcd(cp, cq)
    a, b = pp_p, pp_q
    if a.degree_in(main) < b.degree_in(main):
        a, b = b, a
    while not b.is_zero():
        r = _prem(a, b, main)
        a = b
        if r.is_zero():
            b = r
        else:
            b = _primitive_wrt(r, main)
    if a.degree_in(main) == 0:
        return cont.primitive()
    return (cont * a).primitive()


def _content_primitive(p, i):
    """(content, primitive part) of p viewed as a polynomial in variable i."""
    coeffs = _coeffs_wrt(p, i)
    content = p.vars.zero()
    for poly in coeffs.values():
        content = poly_gcd(content, poly)
        if content.is_constant() and not content.is_zero():
            content = p.vars.one()
            break
    return content, exact_div(p, content)


def _primitive_wrt(p, i):
    _, pp = _content_primitive(p, i)
    return pp.primitive()


# -- text parsing ------------------------------------------------------------


class _PolyLexer:
    _TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()]))")

    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._lex()
        self.i = 0

    def _lex(self):
        pos = 0
        while pos < len(self.text):
            m = self._TOKEN.match(self.text, pos)
            if not m:
                stripped = self.text[pos:].lstrip()
                if not stripped:
                    break
                at = len(self.text) - len(stripped) + 1
                raise ParseError(f"unexpected character {stripped[0]!r}", at)
            if m.group(1):
                raise ParseError("decimal literals are not allowed in polynomials",
                                 m.start(1) + 1)
            kind = "int" if m.group(2) else "name" if m.group(3) else "op"
            value = m.group(2) or m.group(3) or m.group(4)
            self.tokens.append((kind, value, m.start(2 if m.group(2) else 3 if m.group(3) else 4) + 1))
            pos = m.end()

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("end", "", len(self.text) + 1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok


def parse_polynomial(text, vars):
    """Parse canonical polynomial text: terms of integer/fraction coefficients
    and '*'-joined variable powers, combined with '+', '-', and parentheses."""
    lx = _PolyLexer(text)

    def parse_sum():
        kind, value, pos = lx.peek()
        negate = False
        if kind == "op" and value in "+-":
            lx.next()
            negate = value == "-"
        p = parse_product()
        if negate:
            p = -p
        while True:
            kind, value, pos = lx.peek()
            if kind == "op" and value in "+-":
                lx.next()
                q = parse_product()
                p = p - q if value == "-" else p + q
            else:
                return p

    def parse_product():
        p = parse_power()
        while True:
            kind, value, pos = lx.peek()
            if kind == "op" and value == "*":
                lx.next()
                p = p * parse_power()
            else:
                return p

    def parse_power():
        p = parse_atom()
        kind, value, pos = lx.peek()
        if kind == "op" and value == "^":
            lx.next()
            kind, value, pos = lx.next()
            if kind != "int":
                raise ParseError("exponent must be an unsigned integer", pos)
            p = p ** int(value)
        return p

    def parse_atom():
        kind, value, pos = lx.next()
        if kind == "int":
            num = int(value)
            kind2, value2, _ = lx.peek()
            if kind2 == "op" and value2 == "/":
                lx.next()
                kind3, value3, pos3 = lx.next()
                if kind3 != "int":
                    raise ParseError("expected integer denominator", pos3)
                den = int(value3)
                if den == 0:
                    raise ParseError("zero denominator", pos3)
                return vars.const(Fraction(num, den))
            return vars.const(num)
        if kind == "name":
            return vars.var(value)
        if kind == "op" and value == "(":
            p = parse_sum()
            kind2, value2, pos2 = lx.next()
            if not (kind2 == "op" and value2 == ")"):
                raise ParseError("expected ')'", pos2)
            return p
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input", pos)

    p = parse_sum()
    kind, value, pos = lx.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing token {value!r}", pos)
    return p


def parse_relation_file(text):
    """Parse a relation file: a 'vars: n1 n2 ...' header, then one polynomial
    per line; '#' starts a comment.  Returns (VariableSet, [Polynomial])."""
    vars = None
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if vars is None:
            if not line.startswith("vars:"):
                raise ParseError(f"line {lineno}: expected 'vars:' header before relations")
            vars = VariableSet(line[len("vars:"):].split())
            continue
        try:
            relations.append(parse_polynomial(line, vars))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if vars is None:
        raise ParseError("missing 'vars:' header")
    return vars, relations
