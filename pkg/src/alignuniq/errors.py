"""Exception types shared across the package."""

__all__ = ["InvalidInputError", "DomainError", "ResourceLimitError"]


class InvalidInputError(ValueError):
    """Malformed or dimensionally inconsistent input."""


class DomainError(ValueError):
    """Parameter outside its mathematical domain."""


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds a configured safety cap."""
