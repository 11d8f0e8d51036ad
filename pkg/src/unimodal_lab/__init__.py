"""Exact unimodality thresholds and certified envelope maxima for (1+x)^m (1+x^k).

Three layers:

* exactpoly / thresholds: integer and rational arithmetic deciding
  unimodality, strong unimodality, and the sharp m = k^2 - 3 threshold;
* envelope: the variance-envelope membership curve on the unit circle,
  its guarded grid maximization, and membership certificates;
* certmax: a certified enclosure of the limit-shape constant that
  governs the min_m ~ alpha k^4 growth law.

Grid scans run on a compiled extension when available, with a NumPy
fallback (see unimodal_lab.kernels).
"""

__version__ = "0.1.0"

from .certmax import (
    BracketFailure,
    CertifiedMax,
    Interval,
    PreconditionViolation,
    ScalingVerdict,
    bracket_critical,
    certified_alpha,
    classify_by_scaling,
    limit_shape,
    limit_shape_deriv,
    shape_deriv_factor,
    tangent_upper_bound,
)
from .envelope import (
    Inconclusive,
    MembershipCertificate,
    ReductionViolation,
    SandwichReport,
    ThetaScan,
    ThresholdMax,
    VarianceInput,
    denominator_gap,
    envelope_defect,
    log_part,
    max_threshold,
    membership_certificate,
    product_identity_residual,
    quartic_floor_check,
    sandwich_check,
    singular_angles,
    smooth_part,
    threshold_value,
    variance,
)
from .exactpoly import (
    CoeffSeq,
    FamilyParams,
    UnimodalReport,
    binomial,
    coefficient,
    expand_family,
    is_strongly_unimodal,
    is_unimodal,
    poly_mul,
    unimodal_report,
)
from .thresholds import (
    BetaProbe,
    InequalityProbe,
    NotFoundError,
    ThresholdResult,
    a_of_u,
    beta_exact,
    c_minus,
    c_plus,
    case_polynomial_probe,
    central_ratio_even,
    central_ratio_odd,
    generic_min_N,
    inequality_one_probe,
    minimal_m,
    predicted_threshold,
    ratio_vs_coefficients,
    scan_thresholds,
    u_range,
)

__all__ = [
    "__version__",
    # exactpoly
    "CoeffSeq",
    "FamilyParams",
    "UnimodalReport",
    "binomial",
    "coefficient",
    "expand_family",
    "is_strongly_unimodal",
    "is_unimodal",
    "poly_mul",
    "unimodal_report",
    # thresholds
    "BetaProbe",
    "InequalityProbe",
    "NotFoundError",
    "ThresholdResult",
    "a_of_u",
    "beta_exact",
    "c_minus",
    "c_plus",
    "case_polynomial_probe",
    "central_ratio_even",
    "central_ratio_odd",
    "generic_min_N",
    "inequality_one_probe",
    "minimal_m",
    "predicted_threshold",
    "ratio_vs_coefficients",
    "scan_thresholds",
    "u_range",
    # envelope
    "Inconclusive",
    "MembershipCertificate",
    "ReductionViolation",
    "SandwichReport",
    "ThetaScan",
    "ThresholdMax",
    "VarianceInput",
    "denominator_gap",
    "envelope_defect",
    "log_part",
    "max_threshold",
    "membership_certificate",
    "product_identity_residual",
    "quartic_floor_check",
    "sandwich_check",
    "singular_angles",
    "smooth_part",
    "threshold_value",
    "variance",
    # certmax
    "BracketFailure",
    "CertifiedMax",
    "Interval",
    "PreconditionViolation",
    "ScalingVerdict",
    "bracket_critical",
    "certified_alpha",
    "classify_by_scaling",
    "limit_shape",
    "limit_shape_deriv",
    "shape_deriv_factor",
    "tangent_upper_bound",
]
