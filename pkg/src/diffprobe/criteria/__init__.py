"""Differentiability probes for real scalar fields at the origin."""

from .cauchy_like import cauchy_like_residual, default_directions, probe_cauchy_like
from .determinant import (base_tuples, cauchy_determinant, cauchy_matrix, determinant_ratio_series,
                          hadamard_bound, hadamard_holds, probe_cauchy_determinant)
from .geo import FitError, GeoEvidence, fit_tangent_hyperplane, probe_geo
from .partials import (AxisDerivative, DerivativeError, DirectionalDerivative, PartialDerivativeResult,
                       directional_derivative, richardson_derivative, test_partial_derivatives,
                       two_sided_derivative)
from .relaxed import ContinuityModulus, check_relaxed_conditions, partial_derivative_at
from .verdict import CriterionVerdict, Evidence, Verdict, aggregate_verdict

__all__ = [
    "AxisDerivative",
    "ContinuityModulus",
    "CriterionVerdict",
    "DerivativeError",
    "DirectionalDerivative",
    "Evidence",
    "FitError",
    "GeoEvidence",
    "PartialDerivativeResult",
    "Verdict",
    "aggregate_verdict",
    "base_tuples",
    "cauchy_determinant",
    "cauchy_like_residual",
    "cauchy_matrix",
    "check_relaxed_conditions",
    "default_directions",
    "determinant_ratio_series",
    "directional_derivative",
    "fit_tangent_hyperplane",
    "hadamard_bound",
    "hadamard_holds",
    "partial_derivative_at",
    "probe_cauchy_determinant",
    "probe_cauchy_like",
    "probe_geo",
    "richardson_derivative",
    "test_partial_derivatives",
    "two_sided_derivative",
]
