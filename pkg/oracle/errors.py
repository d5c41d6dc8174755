"""Errors raised by the finite-field oracle."""


class OracleError(RuntimeError):
    """Base class for oracle failures."""


class SearchSpaceTooLarge(OracleError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"Search space of {size} assignments exceeds the cap of {cap}")


class ZeroParameter(OracleError):
    pass


class NonSquareConstraint(OracleError):
    pass


class BranchMismatch(OracleError):
    pass


class CoefficientPole(OracleError):
    pass


class NotPrime(OracleError):
    pass


class CapTooLarge(OracleError):
    def __init__(self, cap: int, limit: int):
        self.cap = cap
        self.limit = limit
        super().__init__(f"Cap of {cap} assignments is beyond the 64-bit index range (< {limit})")
