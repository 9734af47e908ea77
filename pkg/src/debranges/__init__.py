"""de Branges space computations for symmetric operators with
deficiency indices (1, 1).

The package realizes the functional model behind a one-parameter family
of selfadjoint extensions: reproducing-kernel spaces built from a
structure function, the s_beta pencil, spectra, resolvents, the xi
gauge, Jacobi-matrix models, and the (C1)/(C2)/(C3) criterion deciding
entire-gauge presence from two extension spectra.
"""

from .errors import (
    ConfigurationError,
    DeBrangesError,
    DegenerateKernelError,
    HypothesisViolationError,
    InconclusiveIntegralError,
    InconclusiveProductError,
    InvalidEigenvalueError,
    InvalidSeedError,
    InvalidSpectraError,
    MalformedFunctionError,
    NotNormalizableError,
    NumericError,
    ParseError,
    RecurrenceOverflowError,
    RefineNeededError,
    SpectrumPointError,
    UnsupportedSpaceError,
    ValidationRejectedError,
)
from .zeros import InterlaceResult, ZeroSequence, interlace_check, scan_real_zeros
from .products import (
    DEFAULT_SCHEDULE,
    TruncationSchedule,
    reciprocal_sum_at,
    symmetric_partial_sums,
)
from .functions import (
    CanonicalProduct,
    ComplexExponential,
    HBValidationReport,
    HermiteBiehlerFunction,
    LinearCombination,
    PointwiseProduct,
    Polynomial,
    RemovedZeroQuotient,
    SBeta,
    StructuredEntireFunction,
    beta_at,
    constant,
    normalize_gauge,
    polynomial_coefficients,
    s_beta,
    validate_hermite_biehler,
)
from .quadrature import IntegralResult, gram_matrix, sampling_inner, window_inner
from .space import (
    DeBrangesSpace,
    ModelElement,
    OrthocomplementWitness,
    SpaceConfig,
    collinearity,
    custom_space,
    paley_wiener_space,
    polynomial_space,
)
from .criterion import (
    CheckResult,
    CriterionConfig,
    CriterionVerdict,
    Overall,
    Status,
    canonical_product,
    check_c1,
    check_c2,
    check_c3,
    entire_criterion,
    product_derivative_at_zero,
)
from .jacobi import (
    JacobiMatrix,
    LimitCircleDiagnostic,
    PolynomialPair,
    gauge_identity_check,
    limit_circle_diagnostic,
    recurrence_eval,
    truncated_extension_spectra,
)
from .serialization import (
    function_from_descriptor,
    function_to_descriptor,
    jacobi_from_descriptor,
    load_spectra,
    save_spectra,
    space_from_descriptor,
    space_to_descriptor,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # errors
    "DeBrangesError", "MalformedFunctionError", "ConfigurationError",
    "NotNormalizableError", "ValidationRejectedError", "HypothesisViolationError",
    "UnsupportedSpaceError", "InconclusiveIntegralError", "InconclusiveProductError",
    "SpectrumPointError", "InvalidEigenvalueError", "InvalidSeedError",
    "InvalidSpectraError", "RefineNeededError", "RecurrenceOverflowError",
    "DegenerateKernelError", "NumericError", "ParseError",
    # zeros and products
    "ZeroSequence", "InterlaceResult", "interlace_check", "scan_real_zeros",
    "TruncationSchedule", "DEFAULT_SCHEDULE", "canonical_product",
    "product_derivative_at_zero", "symmetric_partial_sums", "reciprocal_sum_at",
    # entire functions
    "StructuredEntireFunction", "ComplexExponential", "Polynomial",
    "LinearCombination", "PointwiseProduct", "CanonicalProduct",
    "RemovedZeroQuotient", "constant", "polynomial_coefficients",
    "HBValidationReport", "validate_hermite_biehler", "HermiteBiehlerFunction",
    "normalize_gauge", "SBeta", "s_beta", "beta_at",
    # quadrature
    "IntegralResult", "gram_matrix", "sampling_inner", "window_inner",
    # spaces
    "DeBrangesSpace", "SpaceConfig", "ModelElement", "OrthocomplementWitness",
    "polynomial_space", "paley_wiener_space", "custom_space", "collinearity",
    # criterion
    "Status", "Overall", "CriterionConfig", "CheckResult", "CriterionVerdict",
    "check_c1", "check_c2", "check_c3", "entire_criterion",
    # jacobi
    "JacobiMatrix", "PolynomialPair", "recurrence_eval", "gauge_identity_check",
    "LimitCircleDiagnostic", "limit_circle_diagnostic",
    "truncated_extension_spectra",
    # serialization
    "function_to_descriptor", "function_from_descriptor", "space_to_descriptor",
    "space_from_descriptor", "jacobi_from_descriptor", "load_spectra",
    "save_spectra",
]
