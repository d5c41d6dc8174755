"""Errors raised while building, parsing or reducing quiver models."""

from typing import Optional


class ModelError(ValueError):
    """Base class for model errors; carries an optional source position."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self.describe())

    def describe(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"

    def at(self, line: int, column: Optional[int] = None) -> "ModelError":
        """Same error, positioned in a source file."""
        return type(self)(self.message, line, column if column is not None else self.column)


class DSLSyntaxError(ModelError):
    pass


class UnknownArrow(ModelError):
    pass


class UnknownVertex(ModelError):
    pass


class DuplicateName(ModelError):
    pass


class NonComposableWord(ModelError):
    pass


class NonCyclicWord(ModelError):
    pass


class UndeclaredParameter(ModelError):
    pass


class InvalidCut(ModelError):
    pass


class DimensionMismatch(ModelError):
    pass
