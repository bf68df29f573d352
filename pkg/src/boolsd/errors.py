"""Exception hierarchy shared by every module of the package."""


class BoolSDError(Exception):
    """Base class for all package errors."""


class DomainError(BoolSDError, ValueError):
    """A parameter lies outside its documented validity range."""


class MeasureError(BoolSDError, ValueError):
    """A measure description violates its invariants (mass, positivity, ...)."""


class DegenerateDilationError(MeasureError):
    """Dilation by ``c = 0`` was requested."""


class InvalidTripletError(BoolSDError, ValueError):
    """A Levy triplet breaks ``a >= 0``, puts mass at 0, or is not ``(1 ^ x^2)``-integrable."""


class NumericalDiagnostic(BoolSDError, ArithmeticError):
    """A numerical procedure did not converge.

    ``partial`` carries whatever estimate was available when the procedure gave up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class QuadratureError(NumericalDiagnostic):
    """Adaptive quadrature failed even after refinement."""


class ExtrapolationError(NumericalDiagnostic):
    """An epsilon-ladder limit oscillates or diverges."""


class InvariantViolation(BoolSDError, AssertionError):
    """A structural result was contradicted by the numerics (e.g. an interior atom of an SD measure)."""


class NotSelfDecomposable(BoolSDError):
    """Structured evidence that a measure is not Boolean selfdecomposable.

    Raised by :func:`boolsd.convolution.sd_decompose` when the candidate cofactor
    self-energy leaves the closed lower half-plane.
    """

    def __init__(self, message, c=None, z=None, im_value=None):
        super().__init__(message)
        self.c = c
        self.z = z
        self.im_value = im_value


class ShiftRefused(BoolSDError):
    """Classical shift of a measure with a positive Boolean Gaussian component.

    Such shifts are never selfdecomposable for ``m != 0``; ``verdict`` is ``"fail"``.
    """

    verdict = "fail"


class SolverError(NumericalDiagnostic):
    """An iterative solver stalled or left its domain."""
