"""Closed-form second-variation quadratic forms on the three sub-bundles.

For a composition phi = iota o psi (minimal immersion followed by the
small-sphere inclusion) the pullback bundle splits into

* the normal line spanned by the unit section eta,
* the tangent image d(phi)(TM),
* the vertical complement (tangent to the small sphere, orthogonal to both).

Evaluating the second-variation form on sections built from a Laplace
eigenfunction f with eigenvalue lam collapses, after integration by parts,
to a polynomial in lam times the L^2 norm of f.  This module holds those
polynomials, the exact surd thresholds where their signs flip, the
curvature gates that certify definiteness for all eigenvalues at once,
and the 2x2 normal/tangent block classification used at lam_1.

All arithmetic is exact (Fraction / QuadraticSurd); the only floats here
are in __float__ conveniences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .spectra import (
    CliffordTorus,
    IdentityMap,
    ManifoldFamily,
    TotallyGeodesicInclusion,
    Veronese,
    VeroneseProjective,
    einstein_constant,
    first_nonzero_eigenvalue,
    is_domain_eigenvalue,
)
from .surd import QuadraticSurd

__all__ = [
    "FormValue",
    "GateReport",
    "BlockClassification",
    "normal_form",
    "normal_negative",
    "normal_threshold",
    "lichnerowicz_threshold",
    "tangent_form",
    "tangent_roots",
    "veronese_tangent_roots",
    "vertical_form",
    "cross_term",
    "block_definiteness",
    "gates",
]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("exact rational required, got float")
    return Fraction(x)


@dataclass(frozen=True)
class FormValue:
    """Quadratic-form value per unit integral of f^2 on one sub-bundle.

    ``kind`` is "exact" when the value equals the full second variation of
    the section, "lower_bound" when a nonnegative term was dropped, so the
    true form is >= value: value >= 0 certifies nonnegativity, value < 0 is
    inconclusive on its own.
    """

    value: Fraction
    kind: str
    subbundle: str

    def __post_init__(self):
        if self.kind not in ("exact", "lower_bound"):
            raise ValueError("kind must be 'exact' or 'lower_bound'")
        if self.subbundle not in ("normal", "tangent", "vertical", "cross"):
            raise ValueError("unknown subbundle tag")


def normal_form(m: int, lam) -> FormValue:
    """Normal-direction value lam^2 + 4 lam - 4 m^2 (exact, any domain)."""
    lam = _frac(lam)
    if m < 1:
        raise ValueError("m >= 1 required")
    return FormValue(value=lam * lam + 4 * lam - 4 * m * m, kind="exact", subbundle="normal")


def normal_negative(m: int, lam) -> bool:
    """Sign test: the normal form is negative iff (lam + 2)^2 < 4(m^2 + 1)."""
    lam = _frac(lam)
    return (lam + 2) ** 2 < 4 * (m * m + 1)


def normal_threshold(m: int) -> QuadraticSurd:
    """Positive root of the normal form: 2(sqrt(m^2+1) - 1)."""
    if m < 1:
        raise ValueError("m >= 1 required")
    return QuadraticSurd(a=Fraction(-2), b=Fraction(2), d=Fraction(m * m + 1))


def lichnerowicz_threshold(m: int) -> QuadraticSurd:
    """Ricci bound making the Lichnerowicz estimate clear the normal threshold.

    lam_1 >= m/(m-1) * kappa, so kappa >= 2(m-1)/m * (sqrt(m^2+1) - 1)
    forces every nonzero eigenvalue past the normal sign flip.  Needs m >= 2.
    """
    if m < 2:
        raise ValueError("m >= 2 required for the Ricci eigenvalue estimate")
    r = Fraction(2 * (m - 1), m)
    return QuadraticSurd(a=-r, b=r, d=Fraction(m * m + 1))


def _tangent_poly(m: int, kappa: Fraction, lam: Fraction) -> Fraction:
    # P(lam) = lam^2 + 2(m + 2 - 2 kappa) lam + 4 kappa^2 - 4 kappa m
    return lam * lam + 2 * (m + 2 - 2 * kappa) * lam + 4 * kappa * kappa - 4 * kappa * m


def tangent_form(family: ManifoldFamily, lam, refine_lambda1: bool = False) -> FormValue:
    """Tangent-direction value lam * P(lam) for the gradient section of an eigenfunction.

    Exact for the totally geodesic family (every eigenvalue).  For the other
    minimal immersions a curvature-term estimate is dropped, so the value is
    a lower bound in general; at lam_1 the dropped term has a closed form and
    the value is exact again (for the product torus the refined lam_1 value
    lam_1 P(lam_1) + 32 m^2 = 16 m (m + 8) is returned when
    ``refine_lambda1`` is set).
    """
    lam = _frac(lam)
    if isinstance(family, IdentityMap):
        raise ValueError("tangent_form applies to tropic compositions, not the identity map")
    if not is_domain_eigenvalue(family, lam):
        raise ValueError(f"{lam} is not an eigenvalue of the domain")
    m = family.domain_dim
    kappa = einstein_constant(family).kappa
    lam1 = first_nonzero_eigenvalue(family).value
    base = lam * _tangent_poly(m, kappa, lam)
    if refine_lambda1:
        if not isinstance(family, CliffordTorus):
            raise ValueError("lam_1 refinement is specific to the product torus")
        if lam != lam1:
            raise ValueError("refinement applies at lam_1 only")
        return FormValue(value=base + 32 * m * m, kind="exact", subbundle="tangent")
    if isinstance(family, TotallyGeodesicInclusion):
        kind = "exact"
    elif lam == lam1 and isinstance(family, Veronese):
        # first eigenfunctions are linear, their gradients conformal, and the
        # dropped trace term vanishes; not true for the quotient (lam_1 there
        # comes from degree-2 functions)
        kind = "exact"
    else:
        kind = "lower_bound"
    return FormValue(value=base, kind=kind, subbundle="tangent")


def tangent_roots(m: int, kappa) -> Optional[tuple[QuadraticSurd, QuadraticSurd]]:
    """Real roots of P(lam), or None when the discriminant is negative.

    Roots are (2 kappa - m - 2) -/+ sqrt((m+2)^2 - 8 kappa).
    """
    kappa = _frac(kappa)
    disc4 = Fraction((m + 2) ** 2) - 8 * kappa
    if disc4 < 0:
        return None
    center = 2 * kappa - m - 2
    lower = QuadraticSurd(a=center, b=Fraction(-1), d=disc4)
    upper = QuadraticSurd(a=center, b=Fraction(1), d=disc4)
    return lower, upper


def veronese_tangent_roots(m: int) -> tuple[QuadraticSurd, QuadraticSurd]:
    """Tangent-polynomial roots for the quadratic immersion of S^m.

    x_{1,2} = (m^2 - 5m - 2)/(m+1) -/+ sqrt((m^3 - 3m^2 + 16m + 4)/(m+1)).
    """
    if m < 2:
        raise ValueError("m >= 2 required")
    center = Fraction(m * m - 5 * m - 2, m + 1)
    rad = Fraction(m ** 3 - 3 * m * m + 16 * m + 4, m + 1)
    return (
        QuadraticSurd(a=center, b=Fraction(-1), d=rad),
        QuadraticSurd(a=center, b=Fraction(1), d=rad),
    )


def vertical_form(family: ManifoldFamily, lam) -> FormValue:
    """Vertical-direction value for sections f * e with e a parallel vertical frame entry.

    Totally geodesic family: lam (lam - 2m), exact, needs codimension n - m >= 1.
    Product torus: lam^2 + 4 (l + 2) lam, exact, from the flat vertical line.
    The quadratic-immersion families have no parallel vertical frame, so no
    closed form is exposed for them.
    """
    lam = _frac(lam)
    if isinstance(family, TotallyGeodesicInclusion):
        if family.n == family.m:
            raise ValueError("vertical bundle is trivial when m = n")
        if not is_domain_eigenvalue(family, lam):
            raise ValueError(f"{lam} is not an eigenvalue of the domain")
        m = family.m
        return FormValue(value=lam * (lam - 2 * m), kind="exact", subbundle="vertical")
    if isinstance(family, CliffordTorus):
        if not is_domain_eigenvalue(family, lam):
            raise ValueError(f"{lam} is not an eigenvalue of the domain")
        l = family.l
        return FormValue(value=lam * lam + 4 * (l + 2) * lam, kind="exact", subbundle="vertical")
    raise ValueError("no closed vertical form for this family")


def cross_term(family: ManifoldFamily, lam) -> FormValue:
    """Mixed normal/tangent pairing per unit integral f^2.

    Totally geodesic family: -4 lam (lam + 2 - 2m) at every eigenvalue.
    Quadratic immersion of the sphere: -4 m^3 / (m+1)^2, available at lam_1
    only (the collapse needs the conformal gradient of a linear eigenfunction,
    so it does not descend to the projective quotient).  Other families
    expose no closed cross term.
    """
    lam = _frac(lam)
    if isinstance(family, TotallyGeodesicInclusion):
        if not is_domain_eigenvalue(family, lam):
            raise ValueError(f"{lam} is not an eigenvalue of the domain")
        m = family.m
        return FormValue(value=-4 * lam * (lam + 2 - 2 * m), kind="exact", subbundle="cross")
    if isinstance(family, Veronese):
        lam1 = first_nonzero_eigenvalue(family).value
        if lam != lam1:
            raise ValueError("closed cross term available at lam_1 only for this family")
        m = family.m
        return FormValue(value=Fraction(-4 * m ** 3, (m + 1) ** 2), kind="exact", subbundle="cross")
    raise ValueError("no closed cross term for this family")


@dataclass(frozen=True)
class BlockClassification:
    """Definiteness of the 2x2 symmetric block [[q_n, cr], [cr, q_t]].

    ``kernel_direction`` is a primitive integer vector spanning the kernel
    when the block is singular but nonzero, None otherwise.
    """

    kind: str
    determinant: Fraction
    trace: Fraction
    kernel_direction: Optional[tuple[int, int]]


def _primitive(a: Fraction, b: Fraction) -> tuple[int, int]:
    from math import gcd, lcm

    den = lcm(a.denominator, b.denominator)
    x = a.numerator * (den // a.denominator)
    y = b.numerator * (den // b.denominator)
    g = gcd(x, y)
    x, y = x // g, y // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return x, y


def block_definiteness(q_n, q_t, cross) -> BlockClassification:
    """Classify the symmetric block [[q_n, cross], [cross, q_t]] exactly."""
    q_n, q_t, cross = _frac(q_n), _frac(q_t), _frac(cross)
    det = q_n * q_t - cross * cross
    tr = q_n + q_t
    if det > 0:
        kind = "positive_definite" if q_n > 0 else "negative_definite"
        return BlockClassification(kind=kind, determinant=det, trace=tr, kernel_direction=None)
    if det < 0:
        return BlockClassification(kind="indefinite", determinant=det, trace=tr, kernel_direction=None)
    # singular block
    if q_n == 0 and q_t == 0 and cross == 0:
        return BlockClassification(kind="zero", determinant=det, trace=tr, kernel_direction=None)
    if cross != 0 or q_n != 0:
        direction = _primitive(cross, -q_n)
    else:
        direction = _primitive(q_t, -cross)  # cross = 0, q_n = 0, q_t != 0 -> kernel (1, 0)
    kind = "positive_semidefinite" if tr > 0 else "negative_semidefinite"
    return BlockClassification(kind=kind, determinant=det, trace=tr, kernel_direction=direction)


@dataclass(frozen=True)
class GateReport:
    """Curvature/spectrum gates certifying sign behaviour for all eigenvalues at once."""

    kappa: Fraction
    lambda1: Fraction
    kappa_threshold: QuadraticSurd
    lichnerowicz_pass: bool
    einstein_pass: bool
    lambda1_pass: bool
    identity_stable: bool


def gates(m: int, kappa, lambda1) -> GateReport:
    """Evaluate the three positivity gates plus the identity-map stability test.

    * Lichnerowicz gate: kappa >= 2(m-1)/m * (sqrt(m^2+1) - 1) pushes every
      nonzero eigenvalue beyond the normal-form sign flip.
    * Einstein gate: kappa >= (m+2)^2 / 8, equivalently the tangent
      polynomial has no real roots (nonnegative everywhere).
    * lam_1 gate: lam_1 >= m^2 / 4 (used with the parts inequality on the
      tangent bundle).
    * identity stability: 2 kappa <= lam_1.
    """
    kappa, lambda1 = _frac(kappa), _frac(lambda1)
    if m < 2:
        raise ValueError("gates need m >= 2 (the Ricci estimate degenerates on the circle)")
    thr = lichnerowicz_threshold(m)
    lich = thr.sign_minus(kappa) <= 0  # thr - kappa <= 0  <=>  kappa >= thr
    einstein = kappa >= Fraction((m + 2) ** 2, 8)
    lam1_gate = lambda1 >= Fraction(m * m, 4)
    stable = 2 * kappa <= lambda1
    return GateReport(
        kappa=kappa,
        lambda1=lambda1,
        kappa_threshold=thr,
        lichnerowicz_pass=lich,
        einstein_pass=einstein,
        lambda1_pass=lam1_gate,
        identity_stable=stable,
    )
