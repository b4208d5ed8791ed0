"""Exception hierarchy.

Every failure raised by the library derives from :class:`TwistorError`, which
the CLI maps to exit code 2 (domain error). Input-format problems use
:class:`MalformedInput` and map to exit code 1.
"""


class TwistorError(ValueError):
    """Base class for domain errors."""


class ZeroQuaternion(TwistorError):
    pass


class SingularMatrix(TwistorError):
    pass


class NotProjectivelyReal(TwistorError):
    pass


class IsotropicPoint(TwistorError):
    pass


class UnclassifiablePoint(TwistorError):
    """A non-real anisotropic point with tau >= 1 (no such orbit exists)."""


class RealBasePoint(TwistorError):
    pass


class ConstantPolynomial(TwistorError):
    pass


class ZeroMap(TwistorError):
    pass


class WitnessSearchExhausted(TwistorError):
    pass


class SingularElement(TwistorError):
    pass


class NotAdmissibleForConstant(TwistorError):
    pass


class NotLowerTriangular(TwistorError):
    pass


class MalformedInput(Exception):
    pass


class UnknownCommand(MalformedInput):
    pass
