"""Exception types raised across the package."""


class KakeyaError(Exception):
    """Base class for all errors raised by fqkakeya."""


class NotAPrimePower(KakeyaError, ValueError):
    pass


class MixedFields(KakeyaError, TypeError):
    pass


class DivisionByZero(KakeyaError, ZeroDivisionError):
    pass


class DimensionMismatch(KakeyaError, ValueError):
    pass


class SizeLimitExceeded(KakeyaError, ValueError):
    pass


class EnumerationTooLarge(KakeyaError, ValueError):
    pass


class PointNotOnLine(KakeyaError, ValueError):
    pass


class ZeroPolynomial(KakeyaError, ValueError):
    pass


class EvenCharacteristic(KakeyaError, ValueError):
    pass


class NotKakeya(KakeyaError, ValueError):
    pass


class NotAlmostKakeya(KakeyaError, ValueError):
    pass


class RNotDivisible(KakeyaError, ValueError):
    pass


class ParseError(KakeyaError, ValueError):
    pass
