"""Exception types raised by geophase."""


class GeoPhaseError(Exception):
    """Base class for all library errors."""


class NotHermitian(GeoPhaseError, ValueError):
    pass


class NotPSD(GeoPhaseError, ValueError):
    pass


class NotNormalized(GeoPhaseError, ValueError):
    pass


class NonHermitianExpectation(GeoPhaseError, ArithmeticError):
    """An expectation value of a Hermitian observable came out complex."""


class DomainError(GeoPhaseError, ValueError):
    pass


class ConfigError(GeoPhaseError, ValueError):
    pass
