"""Exception hierarchy shared by every gdm module."""


class GDMError(Exception):
    """Base class for all library errors."""


class NotPrime(GDMError, ValueError):
    pass


class NotIrreducible(GDMError, ValueError):
    pass


class NotPrimitive(GDMError, ValueError):
    pass


class FieldTooLarge(GDMError, ValueError):
    pass


class FieldMismatch(GDMError, TypeError):
    pass


class DivisionByZero(GDMError, ZeroDivisionError):
    pass


class OrderNotAvailable(GDMError, ValueError):
    pass


class LengthMismatch(GDMError, ValueError):
    pass


class IndexOutOfRange(GDMError, IndexError):
    pass


class NotCoprime(GDMError, ValueError):
    pass


class NonBaseFieldSymbol(GDMError, ValueError):
    pass


class NonBaseFieldResult(GDMError, ValueError):
    pass


class InvalidSpectrum(GDMError, ValueError):
    pass


class InconsistentLeader(GDMError, ValueError):
    pass


class UnsupportedFieldConstellationPair(GDMError, ValueError):
    pass


class DomainError(GDMError, ValueError):
    pass
