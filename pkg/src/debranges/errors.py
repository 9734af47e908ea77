"""Exception classes shared across the package."""

__all__ = [
    "DeBrangesError",
    "MalformedFunctionError",
    "ConfigurationError",
    "NotNormalizableError",
    "ValidationRejectedError",
    "HypothesisViolationError",
    "UnsupportedSpaceError",
    "InconclusiveIntegralError",
    "InconclusiveProductError",
    "SpectrumPointError",
    "InvalidEigenvalueError",
    "InvalidSeedError",
    "InvalidSpectraError",
    "RefineNeededError",
    "RecurrenceOverflowError",
    "DegenerateKernelError",
    "NumericError",
    "ParseError",
]


class DeBrangesError(Exception):
    """Base class for all errors raised by this package."""


class MalformedFunctionError(DeBrangesError):
    """Raised when a function representation carries non-finite or
    otherwise unusable parameters."""


class ConfigurationError(DeBrangesError):
    """Raised when a request is malformed (empty grids, bad intervals,
    inconsistent options)."""


class NotNormalizableError(DeBrangesError):
    """Raised when gauge normalization is impossible because e(0) = 0."""


class ValidationRejectedError(DeBrangesError):
    """Raised when a function fails Hermite-Biehler validation but the
    caller required it to pass."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class HypothesisViolationError(DeBrangesError):
    """Raised when a real sample point violates a positivity hypothesis,
    e.g. e(x) = 0 on the real axis."""


class UnsupportedSpaceError(DeBrangesError):
    """Raised when an operation needs structure the space does not carry."""


class InconclusiveIntegralError(DeBrangesError):
    """Raised when the cutoff sweep of a quadrature rule does not settle
    within the requested tolerance."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class InconclusiveProductError(DeBrangesError):
    """Raised when a canonical-product truncation schedule does not
    converge within its configured bound."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or []


class SpectrumPointError(DeBrangesError):
    """Raised when a resolvent is requested at a point of the spectrum."""


class InvalidEigenvalueError(DeBrangesError):
    """Raised when an eigenfunction is requested at a point that is not
    a zero of the selected s_beta."""


class InvalidSeedError(DeBrangesError):
    """Raised when a model-seed pair (gamma, v) is inconsistent, i.e.
    v is not in the spectrum of the gamma extension."""


class InvalidSpectraError(DeBrangesError):
    """Raised when two spectra handed to the decision procedure fail the
    interlacing precondition."""

    def __init__(self, message, first_violation=None):
        super().__init__(message)
        self.first_violation = first_violation


class RefineNeededError(DeBrangesError):
    """Raised when a zero scan sees structure finer than its grid.

    Carries the zeros found so far and the suspicious subintervals so the
    caller can rescan at higher density.
    """

    def __init__(self, message, zeros_found=None, suspect_intervals=None):
        super().__init__(message)
        self.zeros_found = zeros_found
        self.suspect_intervals = suspect_intervals or []


class RecurrenceOverflowError(DeBrangesError):
    """Raised when a three-term recurrence overflows floating range.

    ``largest_valid_k`` is the last index whose values are reliable.
    """

    def __init__(self, message, largest_valid_k):
        super().__init__(message)
        self.largest_valid_k = largest_valid_k


class DegenerateKernelError(DeBrangesError):
    """Raised when a kernel diagonal value is too small to normalize by."""


class NumericError(DeBrangesError):
    """Raised when a numerical backend (eigensolver, linear solve) fails."""


class ParseError(DeBrangesError):
    """Raised when an input file (CSV or JSON descriptor) cannot be read."""
