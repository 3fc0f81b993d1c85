"""Exception types shared across the package."""


class SocialArgError(Exception):
    """Base class for all package-specific errors."""


class DuplicateArgument(SocialArgError):
    """An argument id was declared more than once."""


class UnknownArgument(SocialArgError):
    """An argument id is not declared in the framework."""


class UnknownEndpoint(SocialArgError):
    """An attack references an undeclared argument."""


class NameCollision(SocialArgError):
    """Two frameworks being combined share an argument id."""


class DomainError(SocialArgError):
    """A value lies outside the [0, 1] value space beyond tolerance."""


class DomainViolation(SocialArgError):
    """A scalar input lies outside its required open interval."""


class NonConvergence(SocialArgError):
    """The solver exhausted its iteration budget.

    Carries the best iterate seen so far and its residual.
    """

    def __init__(self, message, best_model=None, residual=None, iterations=None):
        super().__init__(message)
        self.best_model = best_model
        self.residual = residual
        self.iterations = iterations


class SingularJacobian(SocialArgError):
    """A Newton linear solve failed and the Picard fallback is stuck too."""


class TooLarge(SocialArgError):
    """The framework exceeds the size limit of an exhaustive procedure."""


class SafSyntaxError(SocialArgError):
    """A .saf document failed to parse.

    ``line`` and ``column`` are 1-based positions of the offending token.
    """

    def __init__(self, message, line, column=None):
        location = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{message} ({location})")
        self.line = line
        self.column = column


class DuplicateVotes(SocialArgError):
    """Two votes statements target the same argument."""


class NegativeCount(SocialArgError):
    """A vote count is negative."""


class InvariantBreach(SocialArgError):
    """An internal consistency guarantee failed; indicates a bug."""
