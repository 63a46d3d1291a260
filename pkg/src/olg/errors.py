"""Exception types raised across the package.

Every error carries a short message naming the violated condition.  The CLI
maps any of them to exit code 1.
"""


class OLGError(Exception):
    """Base class for all library errors."""


class DivisionByZero(OLGError, ZeroDivisionError):
    pass


class InvalidArgument(OLGError, ValueError):
    pass


class NonHomogeneous(OLGError):
    pass


class NotSquare(OLGError):
    pass


class Degenerate(OLGError):
    pass


class BadWeights(OLGError):
    pass


class NotClassifiable(OLGError):
    pass


class NotASymmetry(OLGError):
    pass


class NonIsolated(OLGError):
    pass


class SocleDegenerate(OLGError):
    pass


class IdentityElement(OLGError):
    pass


class NotInvariant(OLGError):
    pass


class MissingCurving(OLGError):
    pass


class SingularTwist(OLGError):
    pass


class NonIdentityTarget(OLGError):
    pass


class UnsupportedWord(OLGError):
    pass
