"""Exception types shared across the package."""


class SymqcsError(Exception):
    """Base class."""


class ConfigurationError(SymqcsError, ValueError):
    """Incompatible fields, cutoffs or algebras were combined."""


class InvariantViolation(SymqcsError, ValueError):
    """Input data does not satisfy a structural invariant."""


class UnsupportedCharacteristic(SymqcsError, ValueError):
    """The requested operation needs a characteristic that does not divide n!."""


class Unsupported(SymqcsError, ValueError):
    """Input outside the supported class of presentations."""


class DimensionOverflow(SymqcsError, ValueError):
    """A level dimension exceeded the configured bound."""
