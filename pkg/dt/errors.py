"""Errors raised by the DT engine."""


class TheoremError(ValueError):
    """A theorem family or branch that is malformed or does not fit the model."""


class UnsupportedBranch(TheoremError):
    pass
