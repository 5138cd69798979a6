"""Exception types shared across modules."""


class NumericalError(RuntimeError):
    """A numerical routine could not meet its accuracy contract."""


class TruncationError(NumericalError):
    """A Fock expansion or truncated matrix carries too much tail mass."""
