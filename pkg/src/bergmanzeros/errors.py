"""Exception hierarchy shared by all modules.

Every package-specific failure derives from :class:`KernelToolError`, so
callers (in particular the CLI) can distinguish "the mathematics refused"
from genuine bugs.
"""

from __future__ import annotations


class KernelToolError(Exception):
    """Base class for all package-specific errors."""


class NonIntegrableWeightError(KernelToolError):
    """Moment integral diverged or failed to converge within the budget."""


class MomentUnderflowError(KernelToolError):
    """A moment (or its reciprocal) left the double-precision range.

    ``exponent10`` carries the base-10 exponent of the offending value so the
    caller can see how far out of range it was.
    """

    def __init__(self, message: str, exponent10: float | None = None):
        super().__init__(message)
        self.exponent10 = exponent10


class SingularAtOriginError(KernelToolError):
    """Pointwise density query at radius 0 of an associated weight."""


class InsufficientMomentsError(KernelToolError):
    """A moment sequence is too short for the requested transform."""


class NoClosedFormError(KernelToolError):
    """The weight has no closed-form kernel (or exact moment) expression."""


class BranchPointError(KernelToolError):
    """Closed-form kernel evaluated at its branch point."""


class OutsideDomainError(KernelToolError):
    """Evaluation point outside the kernel's disk of analyticity."""


class TruncationInsufficientError(KernelToolError):
    """The certified series tail exceeds the requested tolerance."""


class DiagonalDivergenceError(KernelToolError):
    """Kernel diagonal value is non-finite."""


class KernelHasZeroError(KernelToolError):
    """An operation requiring a zero-free kernel found a zero."""


class DepthCapError(KernelToolError):
    """Star-iterate depth beyond the configured cap."""


class ThresholdSearchExhaustedError(KernelToolError):
    """No positive dominance margin found below the search limit."""


class RootIterationStalledError(KernelToolError):
    """Simultaneous root iteration did not converge; partial results kept."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ZeroNearContourError(KernelToolError):
    """A zero sits too close to the counting contour to certify the winding."""


class AnalyticityViolatedError(KernelToolError):
    """Counting contour reaches or exceeds the domain of analyticity."""


class RootsOutsideDiskError(KernelToolError):
    """Not all polynomial roots lie inside the open unit disk.

    Informative rather than fatal: ``report`` carries the located roots.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class TailNotCertifiableError(KernelToolError):
    """Coefficient ratio test failed below the truncation cap."""


class MagnitudeOverflowError(KernelToolError):
    """Exponential kernel value overflows; the log-magnitude is reported."""

    def __init__(self, message: str, log_magnitude: float | None = None):
        super().__init__(message)
        self.log_magnitude = log_magnitude


class WeightExprError(KernelToolError):
    """Weight-expression parse failure with position and expectation set."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.offset = offset
        self.expected = expected


class QuadratureMismatchError(KernelToolError):
    """Two independent computation routes disagreed beyond tolerance."""
