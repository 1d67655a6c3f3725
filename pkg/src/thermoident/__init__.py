"""thermoident: exact calculus of thermodynamic partial-derivative identities.

Coded derivatives (a,b,c), Jacobians [a,b;c,d] and second derivatives
((a,b,c),d,e) over quantities 1..8 expand to rational functions of the 14
primitive symbols; identities are proved by reduction modulo the constraint
ideal of f1*g2 - f2*g1 - 1, refuted by numeric gas-model evaluation, and
discovered wholesale through a Groebner-basis pipeline.
"""

from .errors import (
    DegenerateCoordinates,
    DivisionByZero,
    DomainError,
    OrderCapExceeded,
    ParseError,
    ThermoError,
    UnsupportedQuantity,
    UsageError,
)
from .polyalg import (
    GRLEX,
    LEX,
    GroebnerBasis,
    Monomial,
    MonomialOrder,
    Polynomial,
    VariableSet,
    buchberger,
    is_member,
    normal_form,
    parse_relation_file,
    poly_gcd,
    s_polynomial,
)
from .ratfun import (
    PRIMITIVES,
    PRIMITIVE_NAMES,
    RationalFunction,
    prim,
    total_derivative,
)
from .derivcalc import (
    DerivTriple,
    JacobianSpec,
    SecondDerivSpec,
    base_partial,
    deriv_triple,
    enumerate_specs,
    jacobian,
    second_deriv,
)
from .expr import parse as parse_expression
from .expr import render as render_expression
from .expr import to_rational
from .models import (
    GasModel,
    StatePoint,
    check_jacobian,
    eval_quantity,
    ideal_gas,
    oracle_second,
    oracle_triple,
    synthesis,
    van_der_waals,
)
from .prover import (
    ConstraintSystem,
    Identity,
    VerificationReport,
    cross_check_discovery,
    default_constraints,
    discover,
    maxwell_relations,
    named_quantity,
    verify,
)

__version__ = "0.1.0"
