"""Tripartite nonlocality and Renyi-2 entanglement of three-mode Gaussian states."""

__version__ = "0.1.0"

from .errors import (
    ConsistencyError,
    DimensionMismatch,
    DomainError,
    GaussBellError,
    InvalidCovarianceMatrix,
    NumericalDomainError,
    ParseError,
    TriangleViolation,
)
from .states import (
    assert_valid_cm,
    build_pure_standard_form,
    is_ppt,
    load_state_file,
    partial_transpose,
    purity,
    reduce_modes,
    save_state_file,
    scaled_symmetric_mixed,
    symmetric_pure,
    symplectic_eigenvalues,
    symplectic_form,
    triangle_margins,
    vacuum,
    z_parameter,
)
from .wigner import GaussianKernel, parity_correlator, wigner_value
from .optimize import MultistartResult, OptimizerOptions, maximize
from .svetlichny import (
    PURITY_CUTOFF,
    S_INFINITY,
    SQRT_3_OVER_2,
    MaximizationResult,
    MeasurementSettings,
    f_of_a,
    maximize_full,
    maximize_restricted,
    svetlichny_value,
    symmetric_max_analytic,
    symmetric_pstar,
)
from .entanglement import (
    ENTANGLEMENT_THRESHOLD,
    StateClassification,
    classify_symmetric_mixed,
    renyi2_entropy,
    symmetric_a_for_entanglement,
    tripartite_renyi2_pure,
    tripartite_renyi2_symmetric,
    two_mode_renyi2,
)
from .sampling import (
    SamplerConfig,
    mixed_cm_at,
    pure_params_at,
    sample_mixed_cm,
    sample_pure_params,
)
from .bell import (
    BellExpression,
    CorrelatorTable,
    correlator_table,
    correlators_to_probabilities,
    evaluate,
    evaluate_table,
    format_expression,
    load_expression,
    maximize_expression,
    parse_expression,
    probabilities_to_correlators,
    svetlichny_expression,
)

__all__ = [name for name in dir() if not name.startswith("_")]
