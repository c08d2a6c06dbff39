"""Exception types shared by every layer."""


class GreenError(Exception):
    """Base class for errors raised by this package."""


class CapExceeded(GreenError):
    """An explicit module would exceed the configured dimension cap.

    The verifier turns this into a ``skipped_cap`` entry and the CLI into exit
    code 3, so it is an expected outcome rather than a crash.
    """

    def __init__(self, what: str, dim: int, cap: int):
        self.what = what
        self.dim = dim
        self.cap = cap
        super().__init__(f"{what} has dimension {dim} > cap {cap}")


class DimensionMismatch(GreenError, ValueError):
    pass


class ContextMismatch(GreenError, ValueError):
    pass


class NotUnipotent(GreenError, ValueError):
    pass


class ConsistencyError(GreenError, RuntimeError):
    """An identity that must hold by construction failed.

    Raised instead of clamping or rounding, e.g. for a negative Jordan block
    multiplicity or a non-integral projective coefficient.
    """
