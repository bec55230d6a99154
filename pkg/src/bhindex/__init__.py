"""Spectral index and nullity calculator for biharmonic sphere maps.

Exact layer: domain spectra, quadratic-form evaluations, sign gates, and
certified index/nullity counts for minimal immersions composed with the
small-sphere inclusion.  Numerical layer (``bhindex.oracle``): discretized
geometries that evaluate the full second-variation operator directly and
cross-check every closed form.
"""

from .classifier import (
    IndexReport,
    classify,
    identity_nullity,
    normal_negative_directions,
    tgi_nullity,
)
from .quadforms import (
    block_definiteness,
    cross_term,
    gates,
    lichnerowicz_threshold,
    normal_form,
    normal_negative,
    normal_threshold,
    tangent_form,
    tangent_roots,
    veronese_tangent_roots,
    vertical_form,
)
from .spectra import (
    CliffordTorus,
    Eigenvalue,
    IdentityMap,
    TotallyGeodesicInclusion,
    Veronese,
    VeroneseProjective,
    einstein_constant,
    family_spectrum,
    first_nonzero_eigenvalue,
    isometry_group_dim,
    make_family,
    sphere_multiplicity,
)
from .surd import QuadraticSurd

__version__ = "0.1.0"

__all__ = [
    "CliffordTorus",
    "Eigenvalue",
    "IdentityMap",
    "IndexReport",
    "QuadraticSurd",
    "TotallyGeodesicInclusion",
    "Veronese",
    "VeroneseProjective",
    "block_definiteness",
    "classify",
    "cross_term",
    "einstein_constant",
    "family_spectrum",
    "first_nonzero_eigenvalue",
    "gates",
    "identity_nullity",
    "isometry_group_dim",
    "lichnerowicz_threshold",
    "make_family",
    "normal_form",
    "normal_negative",
    "normal_negative_directions",
    "normal_threshold",
    "sphere_multiplicity",
    "tangent_form",
    "tangent_roots",
    "tgi_nullity",
    "veronese_tangent_roots",
    "vertical_form",
]
