class PreconditionError(ValueError):
    """An input violates a documented precondition of an operation."""


class InvariantError(RuntimeError):
    """An internal consistency check failed.  Always a bug."""
