"""Exception types shared across the package."""


class ShadowableError(Exception):
    """Base class for all errors raised by this package."""


class MetricError(ShadowableError, ValueError):
    """A distance matrix does not define a finite metric space."""

    kind = "MetricError"

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)

    def report(self):
        return {"valid": False, "error": self.kind, "indices": list(self.indices), "message": str(self)}


class NotSquare(MetricError):
    kind = "NotSquare"


class NonFinite(MetricError):
    kind = "NonFinite"


class NonZeroDiagonal(MetricError):
    kind = "NonZeroDiagonal"


class NonSymmetric(MetricError):
    kind = "NonSymmetric"


class NegativeOrZeroOffDiagonal(MetricError):
    kind = "NegativeOrZeroOffDiagonal"


class TriangleViolation(MetricError):
    kind = "TriangleViolation"


class NotAPermutation(MetricError):
    kind = "NotAPermutation"


class EmptyArgument(ShadowableError, ValueError):
    pass


class SingletonSpace(ShadowableError, ValueError):
    pass


class ZeroExponent(ShadowableError, ValueError):
    pass


class BadParams(ShadowableError, ValueError):
    pass


class NotAWalk(ShadowableError, ValueError):
    pass


class ExplosionGuard(ShadowableError, RuntimeError):
    pass


class StateCapExceeded(ShadowableError, RuntimeError):
    """The subset automaton grew past its configured state cap."""

    def __init__(self, cap, reached, eps=None, delta=None):
        self.cap = cap
        self.reached = reached
        self.eps = eps
        self.delta = delta
        super().__init__(
            f"subset automaton exceeded the state cap of {cap} states "
            f"(eps={eps}, delta={delta})"
        )
