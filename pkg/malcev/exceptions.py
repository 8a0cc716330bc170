class MalcevException(Exception):
    """Raised when an exception is encountered when operating on an algebra."""


class FieldError(MalcevException):
    """Raised on invalid scalar arithmetic or an unsupported field."""


class AlgebraMismatchError(MalcevException):
    """Raised when operands belong to different algebras, fields or dimensions."""


class NotAnIdealError(MalcevException):
    """Raised when a subspace is required to be an ideal and is not."""

    def __init__(self, message="not an ideal"):
        super().__init__(message)


class NotMalcevError(MalcevException):
    """Raised when a computation requires a Malcev algebra."""

    def __init__(self, message="not Malcev"):
        super().__init__(message)


class ConfigError(MalcevException):
    """Raised when a setting or environment override cannot be used."""


class TableParseError(MalcevException):
    """Raised when a multiplication table file cannot be parsed."""

    def __init__(self, message, line, column=1):
        args = message, line, column
        self.message = message
        self.line = line
        self.column = column

        super().__init__(*args)

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"


class TermParseError(MalcevException):
    """Raised when a product expression cannot be parsed."""

    def __init__(self, message, position):
        args = message, position
        self.message = message
        self.position = position

        super().__init__(*args)

    def __str__(self):
        return f"{self.message} (at position {self.position})"


class TermShapeError(MalcevException):
    """Raised when a term does not have the shape an operation requires."""


class EvaluationError(MalcevException):
    """Raised when a term or combination cannot be evaluated in an algebra."""


class RewriteError(MalcevException):
    """Raised when a rewriting cannot be completed."""


class InvariantViolation(MalcevException):
    """Raised when a computed filtration breaks a property it must satisfy.

    This always signals a defect in the computation, never bad input.
    """


class MalcevWarning(Warning):
    """Base warning for malcev."""


class IdealClosureWarning(MalcevWarning):
    """A subspace given as an ideal was replaced by its ideal closure."""
