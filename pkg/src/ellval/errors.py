"""Exception hierarchy shared by every layer of the package."""


class EllvalError(Exception):
    """Base class for all library errors."""


class PrecisionExhausted(EllvalError):
    """A truncated series cannot decide the requested question."""


class NotIntegral(EllvalError):
    pass


class OddValuation(EllvalError):
    pass


class NotASquare(EllvalError):
    pass


class NotRepresentable(EllvalError):
    """The exact answer lives outside the backend (e.g. an irrational root of a rational)."""


class UnsupportedRamification(EllvalError):
    pass


class UnsupportedCharacteristic(EllvalError):
    pass


class DuplicateSymbol(EllvalError):
    pass


class NotIntegralAfterScaling(EllvalError):
    pass


class CurveMismatch(EllvalError):
    pass


class NotOnCurve(EllvalError):
    pass


class InvalidCurve(EllvalError):
    """Coefficients violate integrality or have vanishing discriminant."""


class LiteralError(EllvalError, ValueError):
    """Malformed element literal; ``column`` is 1-based within the literal."""

    def __init__(self, message, column=None, text=None):
        self.column = column
        self.text = text
        self.message = message
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}")


class Counterexample(EllvalError):
    """A verification routine found data contradicting the claim it checks."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))
