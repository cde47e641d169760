"""Exception hierarchy shared by every orefree module."""


class OrefreeError(Exception):
    """Base class for all errors raised by orefree."""


class ParseError(OrefreeError, ValueError):
    """A textual expression could not be parsed."""


class PoleError(OrefreeError, ZeroDivisionError):
    """Evaluation hit a zero of the denominator.

    ``denominator`` is the vanishing polynomial and ``point`` the value
    at which it vanished.
    """

    def __init__(self, denominator, point):
        self.denominator = denominator
        self.point = point
        super().__init__(f"pole at {point}: denominator {denominator} vanishes")


class UnsupportedFactorization(OrefreeError):
    """Irreducible factorization was requested beyond the supported degree."""


class UnsupportedInstance(OrefreeError):
    """The input lies outside what an algorithm is implemented for."""


class SigmaMismatch(OrefreeError, ValueError):
    """Two skew objects with different automorphisms were combined."""


class NotAUnit(OrefreeError, ZeroDivisionError):
    """A series with vanishing leading window was inverted."""


class PrecisionError(OrefreeError):
    """A computation needs more precision than its inputs carry."""

    def __init__(self, message, required):
        self.required = required
        super().__init__(f"{message} (required order {required})")


class InstanceError(OrefreeError, ValueError):
    """An instance file is malformed or semantically invalid."""
