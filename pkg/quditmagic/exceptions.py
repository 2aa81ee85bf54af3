
class QuditMagicError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(QuditMagicError, ValueError):
    """Raise if a configuration, geometry or input file is invalid."""


class NotPrimeError(ConfigError):
    """Raise if the modulus is not an odd prime."""


class GeometryError(ConfigError):
    """Raise if a geometry does not fit the assumptions of a scenario."""


class GuardExceededError(QuditMagicError, MemoryError):
    """Basically acts as a size error, but "except MemoryError" will catch it."""


class IntegrityError(QuditMagicError, ArithmeticError):
    """Raise if a numerical identity that must hold is broken."""


class NonInvertibleError(QuditMagicError, ZeroDivisionError):
    """Raise if inverting zero in a prime field."""


class DimensionMismatchError(QuditMagicError, ValueError):
    """Raise if vectors or operators have incompatible dimensions."""


class StateValidationError(QuditMagicError, ValueError):
    """Raise if a state, density matrix or gate fails validation."""


class NotLagrangianError(QuditMagicError, ValueError):
    """Raise if a subspace is not a stochastic Lagrangian subspace."""


class ApproximateSolutionWarning(UserWarning):
    """Subclassed warning to allow finer control of messages."""
