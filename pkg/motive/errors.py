"""Errors raised by motivic scalar and series arithmetic."""


class MotiveError(ValueError):
    """Base class for motive-ring and series errors."""


class MotiveDivisionByZero(MotiveError, ZeroDivisionError):
    pass


class OddHalfPower(MotiveError):
    """The value genuinely involves an odd power of L^(1/2)."""


class PoleAtPrime(MotiveError):
    pass


class PoleAtMinusOne(MotiveError):
    """The denominator vanishes at L^(1/2) = -1, so there is no Euler specialization."""


class NotPrime(MotiveError):
    pass


class MotiveParseError(MotiveError):
    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


class SeriesShapeMismatch(MotiveError):
    pass


class NonzeroConstantTerm(MotiveError):
    pass


class ConstantTermNotOne(MotiveError):
    pass


class ZeroNumeratorExponent(MotiveError):
    pass
