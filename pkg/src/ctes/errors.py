class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ParameterError(DomainError):
    """Invalid curlicue parameters (M < 2 or j < 1)."""
