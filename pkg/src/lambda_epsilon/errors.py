"""Exception hierarchy shared by every lambda-epsilon module."""


class LambdaEpsilonError(Exception):
    """Base class for all errors raised by the toolkit."""


class TermSyntaxError(LambdaEpsilonError):
    """Input text does not conform to the surface grammar."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class FreeVariableCaptureError(LambdaEpsilonError, ValueError):
    """A differential substitution was asked to derive along a term mentioning its variable."""

    def __init__(self, variable: str, context: str = "differential substitution"):
        self.variable = variable
        super().__init__(
            f"{context}: variable '{variable}' occurs free in the direction term"
        )


class CarrierTooLargeError(LambdaEpsilonError):
    """A type denotes a carrier beyond the configured size limit."""

    def __init__(self, type_text: str, limit: int):
        self.limit = limit
        super().__init__(f"carrier of {type_text} exceeds the size limit of {limit}")


class UnknownBaseTypeError(LambdaEpsilonError):
    """A base type has no modulus in the model configuration."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"base type '{name}' has no modulus in the model")


class ModelInvariantError(LambdaEpsilonError):
    """Semantic values of incompatible shapes were combined."""


class NotAReductionError(LambdaEpsilonError, ValueError):
    """A claimed one-step reduction s => s' does not hold."""


class UsageError(LambdaEpsilonError):
    """A command was given the wrong number or kind of inputs."""
