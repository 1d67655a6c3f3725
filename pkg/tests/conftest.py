import random

import pytest

from thermoident.polyalg import Polynomial, VariableSet


@pytest.fixture
def xy():
    return VariableSet(["x", "y"])


@pytest.fixture
def xyz():
    return VariableSet(["x", "y", "z"])


def random_poly(rng, vs, max_terms=4, max_deg=3, coeff_bound=4, allow_zero=True):
    """Small random polynomial with integer coefficients."""
    n = rng.randrange(0 if allow_zero else 1, max_terms + 1)
    terms = {}
    for _ in range(n):
        exps = {
            i: rng.randrange(0, max_deg + 1)
            for i in range(len(vs.names))
            if rng.random() < 0.7
        }
        c = rng.randrange(-coeff_bound, coeff_bound + 1)
        if c:
            m = vs.monomial(exps)
            terms[m] = terms.get(m, 0) + c
    return Polynomial(vs, {m: c for m, c in terms.items() if c})


def random_nonzero_poly(rng, vs, **kw):
    while True:
        p = random_poly(rng, vs, allow_zero=False, **kw)
        if not p.is_zero():
            return p
