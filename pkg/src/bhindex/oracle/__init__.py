"""Numerical oracle: explicit geometries checking the exact layer independently."""

from .checks import (
    CASES,
    Check,
    IdentityResiduals,
    VerificationReport,
    biharmonicity_residuals,
    bilinear,
    energy_gradient_residual,
    full_second_variation,
    identity_residuals,
    killing_dimension,
    quadform_numeric,
    run_case_checks,
    run_identity_suite,
    trace_identity_residual,
)
from .flat import FlatGeometry
from .geometry import DiscretizedSection, build_geometry, pairwise_sum
from .sphere import SphereGeometry

__all__ = [
    "CASES",
    "Check",
    "DiscretizedSection",
    "FlatGeometry",
    "IdentityResiduals",
    "SphereGeometry",
    "VerificationReport",
    "biharmonicity_residuals",
    "bilinear",
    "build_geometry",
    "energy_gradient_residual",
    "full_second_variation",
    "identity_residuals",
    "killing_dimension",
    "pairwise_sum",
    "quadform_numeric",
    "run_case_checks",
    "run_identity_suite",
    "trace_identity_residual",
]
