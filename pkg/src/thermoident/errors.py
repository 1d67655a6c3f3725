"""Exception types shared across the package."""


class ThermoError(Exception):
    """Base class for all thermoident errors."""


class UsageError(ThermoError):
    """Invalid arguments or violated API precondition."""


class ParseError(UsageError):
    """Syntax error in expression or polynomial text (1-based position)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DivisionByZero(ThermoError):
    """Division by a zero polynomial or rational function."""


class OrderCapExceeded(ThermoError):
    """A derivative beyond second order would be required."""


class DegenerateCoordinates(ThermoError):
    """A coordinate map is singular: its Jacobian denominator vanishes."""


class DomainError(ThermoError):
    """State lies outside a gas model's admissible domain."""


class UnsupportedQuantity(ThermoError):
    """Quantity has no standalone value (the energy potentials, codes 5-8)."""
