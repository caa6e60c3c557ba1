class PetersonError(ValueError):
    """Base class for argument and domain errors raised by this package."""


class ParseError(PetersonError):
    pass


class NotFiniteTypeError(PetersonError):
    """An explicit Cartan matrix failed finite-type validation."""

    def __init__(self, message, minor=None):
        super().__init__(message)
        self.minor = minor


class DomainError(PetersonError):
    pass


class OutsideModelError(ArithmeticError):
    """A fixed-point vector does not expand polynomially in the Omega basis."""
