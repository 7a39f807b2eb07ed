"""Exception hierarchy.

Everything raised on purpose derives from :class:`MathError`, except
:class:`ParseError`, which is reserved for malformed external input.
"""


class MathError(Exception):
    pass


class ParseError(ValueError):
    def __init__(self, message, pointer=""):
        super().__init__(message)
        self.pointer = pointer


# field
class CompositeCharacteristic(MathError):
    pass


class SearchExhausted(MathError):
    pass


class DescriptorMismatch(MathError):
    pass


class DivisionByZero(MathError, ZeroDivisionError):
    pass


class NotADivisor(MathError):
    pass


# curve
class NotMonic(MathError):
    pass


class DegreeOutOfRange(MathError):
    pass


class SingularCurve(MathError):
    pass


class PointNotOnCurve(MathError):
    pass


class TooLarge(MathError):
    pass


# jacobian
class InvariantViolation(MathError):
    pass


class ZeroEncountered(MathError):
    """An evaluation divisor meets a zero or pole of the function."""


class NoTorsion(MathError):
    pass


class RetriesExhausted(MathError):
    pass


class ProjectionDegenerate(MathError):
    pass


# miller / pairings
class OrderMismatch(MathError):
    pass


class BadH(MathError):
    pass


class BadExpansion(MathError):
    pass


class BadSpec(MathError):
    pass


class BadTwistExponent(MathError):
    pass


class NotInEigenspace(MathError):
    pass


class ZeroInput(MathError):
    pass


class UnknownPairing(MathError):
    pass


class BadContext(MathError):
    pass


# pfsearch
class NotCoprime(MathError):
    pass


class FactorizationBudget(MathError):
    pass
