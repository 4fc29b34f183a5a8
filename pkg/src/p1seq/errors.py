"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ValidationError(DomainError):
    """A sequence or input file failed validation.

    ``position`` is the 1-based index (or file line) of the first offending
    entry, when one exists.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class ResourceError(RuntimeError):
    """A configured size cap would be exceeded."""


class IncompleteFactorizationError(ArithmeticError):
    """Pollard-rho exhausted its retry budget on a composite cofactor.

    ``partial`` holds the prime factors found before giving up and
    ``cofactor`` the unfactored composite remainder.
    """

    def __init__(self, n: int, partial, cofactor: int):
        super().__init__(f"could not split cofactor {cofactor} of {n}")
        self.n = n
        self.partial = partial
        self.cofactor = cofactor
