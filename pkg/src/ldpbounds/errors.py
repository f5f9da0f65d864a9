"""Exception types shared across the library."""


class ValidationError(ValueError):
    """Malformed data: invalid probability vectors, non-stochastic matrices, size mismatches."""


class DomainError(ValueError):
    """Structurally valid input outside an operation's domain (e.g. gamma below 1)."""
