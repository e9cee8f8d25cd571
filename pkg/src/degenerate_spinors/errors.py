"""Exception types raised across the package."""


class DegenerateSpinorError(Exception):
    """Base class for all package errors."""


class ZeroSpinor(DegenerateSpinorError, ValueError):
    pass


class DegenerateParameter(DegenerateSpinorError, ValueError):
    pass


class SingularTransform(DegenerateSpinorError, ArithmeticError):
    pass


class CoordinateViolation(DegenerateSpinorError, ValueError):
    pass


class CatalogError(DegenerateSpinorError, ValueError):
    """Expression uses an operation outside the scalar-field catalog."""


class NonHermitianResidual(DegenerateSpinorError, ArithmeticError):
    pass


class SingularDenominator(DegenerateSpinorError, ArithmeticError):
    pass


class NonRealPotential(DegenerateSpinorError, ArithmeticError):
    pass


class NoSolution(DegenerateSpinorError, ArithmeticError):
    def __init__(self, message, residual_floor=None, scale=None):
        super().__init__(message)
        self.residual_floor = residual_floor
        self.scale = scale


class DerivativeUnavailable(DegenerateSpinorError, TypeError):
    pass


class DegenerateSlope(DegenerateSpinorError, ArithmeticError):
    pass


class ConstructionUnavailable(DegenerateSpinorError, RuntimeError):
    pass


class UnknownFamily(DegenerateSpinorError, KeyError):
    pass


class NonPositiveProfile(DegenerateSpinorError, ValueError):
    pass


class NonPositiveInput(DegenerateSpinorError, ValueError):
    pass


class InvalidConfig(DegenerateSpinorError, ValueError):
    pass


class UnknownChannel(DegenerateSpinorError, IndexError):
    pass
