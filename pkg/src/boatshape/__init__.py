"""Robust Bayesian inference for binary data with sets of conjugate Beta priors.

Prior knowledge is modeled as a set of Beta priors (a line segment, a
rectangle of canonical parameters, or a boat-shaped set with exponential
contours).  Updating acts on the whole set at once, and inferences come back
as intervals: narrow under strong prior-data agreement, wide under
prior-data conflict.
"""

from .errors import InvalidParameterError, NumericError
from .inference import (
    BetaShape,
    CredibilityUnion,
    beta_cdf,
    beta_log_pdf,
    beta_quantile,
    credibility_union,
    delta_rectangle_closed_form,
    imprecision_delta,
    posterior_expectation_bounds,
)
from .oracle import GridSpec, grid_credibility_union, grid_delta, grid_shadow
from .params import (
    APEX,
    BinomialData,
    CanonicalParams,
    EtaPoint,
    canonical_to_eta,
    eta_to_canonical,
    in_domain,
    ray_eta1,
    update_canonical,
    update_eta,
)
from .shapes import (
    BoatshapeSpec,
    EtaSet,
    LineSegmentSpec,
    RectangleSpec,
    ValidationReport,
    boat_contours,
    boat_set,
    boundary,
    contains,
    from_record,
    rectangle_set,
    rotate_about_apex,
    segment_set,
    to_record,
    updated,
    validate,
)
from .touchpoint import (
    AgreementThresholds,
    LearningPhase,
    ShadowResult,
    agreement_thresholds,
    learning_phase,
    shadow,
    solve_posterior_touchpoints,
    solve_prior_upper_touchpoint,
    terminal_slopes,
)

__version__ = "0.1.0"

__all__ = [
    "APEX",
    "AgreementThresholds",
    "BetaShape",
    "BinomialData",
    "BoatshapeSpec",
    "CanonicalParams",
    "CredibilityUnion",
    "EtaPoint",
    "EtaSet",
    "GridSpec",
    "InvalidParameterError",
    "LearningPhase",
    "LineSegmentSpec",
    "NumericError",
    "RectangleSpec",
    "ShadowResult",
    "ValidationReport",
    "agreement_thresholds",
    "beta_cdf",
    "beta_log_pdf",
    "beta_quantile",
    "boat_contours",
    "boat_set",
    "boundary",
    "canonical_to_eta",
    "contains",
    "credibility_union",
    "delta_rectangle_closed_form",
    "eta_to_canonical",
    "from_record",
    "grid_credibility_union",
    "grid_delta",
    "grid_shadow",
    "imprecision_delta",
    "in_domain",
    "learning_phase",
    "posterior_expectation_bounds",
    "ray_eta1",
    "rectangle_set",
    "rotate_about_apex",
    "segment_set",
    "shadow",
    "solve_posterior_touchpoints",
    "solve_prior_upper_touchpoint",
    "terminal_slopes",
    "to_record",
    "update_canonical",
    "update_eta",
    "updated",
    "validate",
]
