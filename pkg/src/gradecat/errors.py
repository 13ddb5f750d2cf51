"""
Exception types raised across gradecat.
"""
from typing import Any, Optional, Tuple


class GradecatError(Exception):
    """Base class for every error raised by gradecat."""
    pass


class DomainError(GradecatError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""
    pass


class UnknownObjectError(DomainError):
    """Raised when a name does not denote an object of the category."""
    pass


class GroupError(DomainError):
    """Raised when a multiplication table violates the group axioms."""
    pass


class NotAHomomorphismError(DomainError):
    """Raised when an assignment between groups is not multiplicative."""

    def __init__(self, message: str, pair: Optional[Tuple[Any, Any]] = None):
        super().__init__(message)
        self.pair = pair


class MalformedGradingError(DomainError):
    """Raised when grading data cannot describe a grading at all."""
    pass


class PreconditionError(DomainError):
    """Raised when an operation's precondition fails; carries a witness."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class SchemaError(GradecatError):
    """Raised when an input document violates the file schema."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer}: {message}" if pointer else message)
        self.pointer = pointer
        self.reason = message


class UnsupportedError(GradecatError):
    """Raised when a computation needs an infinite or oversized enumeration."""
    pass


class InvariantFailure(GradecatError):
    """Raised when an internal invariant does not hold."""
    pass


class TheoremViolation(InvariantFailure):
    """Raised when a property guaranteed by the theory fails on an instance."""
    pass
