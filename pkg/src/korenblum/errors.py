"""Exception types raised across the package."""


class KorenblumError(Exception):
    pass


class DomainError(KorenblumError, ValueError):
    """A scalar argument (radius, degree, parameter) is outside its domain."""


class ZeroPolynomial(KorenblumError, ValueError):
    pass


class ZeroDenominator(ZeroPolynomial):
    pass


class UncancelledPole(KorenblumError):
    pass


class PoleOnCircle(KorenblumError):
    pass


class DegenerateCircle(KorenblumError):
    """The Mobius image of a circle degenerates (pole on the circle)."""


class ConfigError(KorenblumError, ValueError):
    pass


class ZeroTooCloseToBoundary(KorenblumError, ValueError):
    pass


class ParseError(KorenblumError, ValueError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column
