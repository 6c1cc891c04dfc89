"""Exception types raised across the package."""


class TensorDualError(Exception):
    """Base class for all library errors."""


class PresentationInvalid(TensorDualError, ValueError):
    """A finite presentation violates its structural invariants."""


class ZeroDenominator(PresentationInvalid):
    """A rational-function denominator vanishes at a natural number."""


class NotInDualError(TensorDualError):
    """Raised when a decomposition is requested for a non-continuous character."""

    def __init__(self, certificate):
        super().__init__(f"character is not continuous: {certificate}")
        self.certificate = certificate


class JFiniteError(TensorDualError, ValueError):
    """The index set handed to the annihilator construction is finite."""


class NotFinite(TensorDualError, ValueError):
    """An operation needing element enumeration got an infinite group."""


class TooLarge(TensorDualError, ValueError):
    """A brute-force enumeration exceeds its size guard."""


class IllFormedBicharacter(TensorDualError, ValueError):
    """Generator values of a bicharacter ignore the generator orders."""


class MixedTorusValue(TensorDualError, ValueError):
    """A pointwise value combines several independent symbols at one index."""
