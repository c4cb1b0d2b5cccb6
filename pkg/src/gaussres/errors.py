"""Exception types raised by the verification library."""


class VerificationError(Exception):
    """Base class for every error raised by gaussres."""


class NonFinite(VerificationError, ValueError):
    pass


class PoleProximity(VerificationError, ValueError):
    def __init__(self, z, distance, guard):
        self.z = z
        self.distance = distance
        self.guard = guard
        super().__init__(
            f"point {z!r} lies {distance:.3e} from a pole (guard {guard:.1e})"
        )


class NotAPole(VerificationError, ValueError):
    pass


class RadiusTooLarge(VerificationError, ValueError):
    pass


class RadiusOutOfRange(VerificationError, ValueError):
    pass


class QuadratureNotConverged(VerificationError, ArithmeticError):
    def __init__(self, message, result=None):
        self.result = result
        super().__init__(message)


class NonFiniteSample(VerificationError, ArithmeticError):
    pass


class DecayAssumptionViolated(VerificationError, ArithmeticError):
    pass


class BalanceFailed(VerificationError, AssertionError):
    """An identity did not close within tolerance.

    ``discrepancy`` and ``tolerance`` are kept so reporting code can record
    the failed check instead of aborting a whole suite.
    """

    def __init__(self, what, discrepancy, tolerance):
        self.what = what
        self.discrepancy = discrepancy
        self.tolerance = tolerance
        super().__init__(f"{what}: discrepancy {discrepancy:.3e} > tol {tolerance:.1e}")


class BoundViolated(BalanceFailed):
    pass


class PoleAtOne(VerificationError, ValueError):
    pass


class DegenerateNodes(VerificationError, ValueError):
    pass


class UnknownSuite(VerificationError, ValueError):
    pass


class InvalidOverride(VerificationError, ValueError):
    pass


class UnknownKind(VerificationError, ValueError):
    pass


class IoFailure(VerificationError, OSError):
    pass
