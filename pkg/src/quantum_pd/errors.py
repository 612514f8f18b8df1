class ValidationError(ValueError):
    """Input failed a structural check (ordering, norm, unitarity, shape)."""


class DomainError(ValueError):
    """A real parameter lies outside its allowed interval."""


class ConsistencyError(RuntimeError):
    """Two computations that must agree did not."""


class EmptyResultError(ValueError):
    """An operation that needs data was handed none."""
