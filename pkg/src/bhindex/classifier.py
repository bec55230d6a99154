"""Certified index and nullity counts for the tropic compositions.

``classify`` enumerates the domain spectrum up to a cutoff past which no
closed form can go negative, evaluates the sub-bundle quadratic forms on
each eigenvalue, assembles the 2x2 normal/tangent block wherever the mixed
term has a closed expression, and adds up certified negative and null
directions.  The totally geodesic family comes out exact; the curved
immersions only admit one-sided tangent bounds beyond lam_1 and no closed
vertical analysis, so their index and nullity are honest lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .quadforms import (
    BlockClassification,
    block_definiteness,
    cross_term,
    normal_form,
    normal_negative,
    normal_threshold,
    tangent_form,
    tangent_roots,
    vertical_form,
)
from .serialize import SCHEMA_VERSION, rational_obj
from .spectra import (
    CliffordTorus,
    Eigenvalue,
    IdentityMap,
    ManifoldFamily,
    TotallyGeodesicInclusion,
    Veronese,
    VeroneseProjective,
    distinct_eigenvalues,
    einstein_constant,
    family_obj,
    family_spectrum,
    first_nonzero_eigenvalue,
    isometry_group_dim,
    level_str,
)

__all__ = [
    "EigenSign",
    "BlockNote",
    "SubBundleContribution",
    "TgiNullity",
    "IndexReport",
    "classify",
    "tgi_nullity",
    "identity_nullity",
    "normal_negative_directions",
    "report_json_obj",
    "report_text",
]


@dataclass(frozen=True)
class EigenSign:
    """Sign of one quadratic form at one eigenvalue.

    ``sign`` is "-", "0" or "+" when known, "?" otherwise; ``certified``
    says whether the sign of the true form is proven (a strictly positive
    lower bound certifies "+", an exact value certifies anything).
    """

    eigenvalue: Fraction
    multiplicity: int
    sign: str
    certified: bool
    note: str = ""


@dataclass(frozen=True)
class BlockNote:
    """The 2x2 normal/tangent block at one eigenvalue, with its exact classification."""

    eigenvalue: Fraction
    multiplicity: int
    q_normal: Fraction
    q_tangent: Fraction
    cross: Fraction
    classification: BlockClassification


@dataclass(frozen=True)
class SubBundleContribution:
    """Certified counts for one sub-bundle (or for the paired block layer)."""

    subbundle: str
    negative_count: int
    null_count: int
    certified: bool
    eigen_attribution: tuple[EigenSign, ...] = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class TgiNullity:
    """Closed-form nullity split for the totally geodesic family."""

    total: int
    first_eigen_pairs: int
    killing: int
    vertical: int


@dataclass(frozen=True)
class IndexReport:
    family: ManifoldFamily
    lambda_max: Fraction
    index_exact: Optional[int]
    index_lower_bound: int
    nullity_exact: Optional[int]
    nullity_lower_bound: int
    contributions: tuple[SubBundleContribution, ...]
    blocks: tuple[BlockNote, ...]
    conjecture: Optional[str]
    warnings: tuple[str, ...]


def tgi_nullity(m: int, n: int) -> TgiNullity:
    """Nullity split (m+1)(m+2)/2 + (m+2)(n-m) for the totally geodesic family."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    pairs = m + 1
    killing = m * (m + 1) // 2
    vertical = (m + 2) * (n - m)
    return TgiNullity(total=pairs + killing + vertical, first_eigen_pairs=pairs, killing=killing, vertical=vertical)


def identity_nullity(n: int) -> int:
    """Nullity of the identity map of the unit n-sphere: 6 for n = 2, n(n+1)/2 beyond."""
    if n < 2:
        raise ValueError("n >= 2 required")
    if n == 2:
        return 6
    return n * (n + 1) // 2


def normal_negative_directions(family: ManifoldFamily) -> int:
    """Total multiplicity of eigenvalues whose normal form is negative.

    The normal form is increasing past its positive root, so the scan stops
    at the first eigenvalue beyond the threshold surd.
    """
    if isinstance(family, IdentityMap):
        raise ValueError("normal counting applies to tropic compositions")
    m = family.domain_dim
    thr = normal_threshold(m)
    total = 0
    for ev in distinct_eigenvalues(family):
        if thr.sign_minus(ev.value) < 0:  # eigenvalue strictly past the root
            break
        if normal_negative(m, ev.value):
            total += ev.multiplicity
    return total


def _block_counts(cls: BlockClassification, mult: int) -> tuple[int, int]:
    """(negative, null) direction counts contributed by one 2x2 block family."""
    return {
        "positive_definite": (0, 0),
        "positive_semidefinite": (0, mult),
        "indefinite": (mult, 0),
        "negative_semidefinite": (mult, mult),
        "negative_definite": (2 * mult, 0),
        "zero": (0, 2 * mult),
    }[cls.kind]


def _tail_ok(family: ManifoldFamily, lam: Fraction, n_distinct: int) -> bool:
    """True when no closed form can be negative at any eigenvalue > lam.

    Conditions: lam past the normal-form root; lam at or past the upper
    tangent-polynomial root (when real); for the totally geodesic family
    also lam >= 4(m+1), past which the block determinant lam(lam-2m)C(lam)
    has C increasing from a positive value, so every later block is
    positive definite; and at least three distinct eigenvalues enumerated
    so lam_1's block is always in range.
    """
    if n_distinct < 3:
        return False
    m = family.domain_dim
    if normal_threshold(m).sign_minus(lam) >= 0:
        return False
    roots = tangent_roots(m, einstein_constant(family).kappa)
    if roots is not None and roots[1].sign_minus(lam) > 0:
        return False
    if isinstance(family, TotallyGeodesicInclusion) and lam < 4 * (m + 1):
        return False
    return True


def _resolve_lambda_max(family: ManifoldFamily, lambda_max) -> tuple[Fraction, list[Eigenvalue]]:
    if lambda_max is None:
        evs: list[Eigenvalue] = []
        for ev in distinct_eigenvalues(family):
            evs.append(ev)
            if _tail_ok(family, ev.value, len(evs)):
                return ev.value, evs
        raise AssertionError("unreachable")
    lambda_max = Fraction(lambda_max)
    evs = family_spectrum(family, lambda_max)
    if not _tail_ok(family, lambda_max, len(evs)):
        raise ValueError(
            "lambda_max is too small: eigenvalues beyond it could still contribute "
            "certified negative directions"
        )
    return lambda_max, evs


def _exact_sign(value: Fraction) -> str:
    if value < 0:
        return "-"
    if value == 0:
        return "0"
    return "+"


def _bound_sign(value: Fraction) -> tuple[str, bool]:
    # a strictly positive lower bound certifies strict positivity
    if value > 0:
        return "+", True
    return "?", False


def classify(family: ManifoldFamily, lambda_max=None) -> IndexReport:
    """Certified index/nullity report for a tropic composition.

    ``lambda_max`` bounds the enumerated spectrum; by default the smallest
    certified cutoff is used.  An explicit value that leaves a potentially
    contributing tail raises ValueError.  The identity map is rejected (it
    is not a tropic composition; see ``identity_nullity`` and the gates).
    """
    if isinstance(family, IdentityMap):
        raise ValueError("classify applies to tropic compositions; use identity_nullity for the identity map")
    lam_cut, evs = _resolve_lambda_max(family, lambda_max)
    lam1 = first_nonzero_eigenvalue(family).value
    ev1 = next(ev for ev in evs if ev.value == lam1)

    if isinstance(family, TotallyGeodesicInclusion):
        return _classify_tgi(family, lam_cut, evs)
    if isinstance(family, Veronese):
        return _classify_veronese(family, lam_cut, evs, ev1)
    if isinstance(family, VeroneseProjective):
        return _classify_projective(family, lam_cut, evs)
    return _classify_clifford(family, lam_cut, evs, ev1)


def _normal_signs(m: int, evs: list[Eigenvalue], paired: set[Fraction]) -> tuple[list[EigenSign], int]:
    signs = []
    negatives = 0
    for ev in evs:
        q = normal_form(m, ev.value).value
        note = "counted within the paired block" if ev.value in paired else ""
        signs.append(EigenSign(ev.value, ev.multiplicity, _exact_sign(q), True, note))
        if q < 0 and ev.value not in paired:
            negatives += ev.multiplicity
    return signs, negatives


def _classify_tgi(family: TotallyGeodesicInclusion, lam_cut, evs) -> IndexReport:
    m, n = family.m, family.n
    blocks = []
    block_neg = 0
    block_null = 0
    pair_signs = []
    for ev in evs:
        if ev.value == 0:
            continue
        q_n = normal_form(m, ev.value).value
        q_t = tangent_form(family, ev.value).value
        cr = cross_term(family, ev.value).value
        cls = block_definiteness(q_n, q_t, cr)
        blocks.append(BlockNote(ev.value, ev.multiplicity, q_n, q_t, cr, cls))
        neg, nul = _block_counts(cls, ev.multiplicity)
        block_neg += neg
        block_null += nul
        sign = {(0, 0): "+", (ev.multiplicity, 0): "?"}.get((neg, nul), "0")
        note = ""
        if cls.kernel_direction is not None:
            a, b = cls.kernel_direction
            note = f"kernel direction {a}*f*eta + {b}*dphi(grad f)"
        pair_signs.append(EigenSign(ev.value, ev.multiplicity, sign, True, note))

    paired = {ev.value for ev in evs if ev.value != 0}
    normal_signs, normal_neg = _normal_signs(m, evs, paired)
    killing = m * (m + 1) // 2

    contributions = [
        SubBundleContribution("normal", normal_neg, 0, True, tuple(normal_signs),
                              ("constant sections span the negative direction",)),
        SubBundleContribution("normal_tangent_pairs", block_neg, block_null, True, tuple(pair_signs),
                              ("2x2 block per eigenfunction, classified exactly",)),
        SubBundleContribution("tangent_killing", 0, killing, True, (),
                              ("isometric variations of the domain are null",)),
    ]

    vert_null = 0
    if n > m:
        vert_signs = []
        for ev in evs:
            q = vertical_form(family, ev.value).value
            vert_signs.append(EigenSign(ev.value, ev.multiplicity, _exact_sign(q), True))
            if q == 0:
                vert_null += (n - m) * ev.multiplicity
        contributions.append(
            SubBundleContribution("vertical", 0, vert_null, True, tuple(vert_signs),
                                  ("parallel frame of the vertical bundle, one copy per direction",))
        )
    else:
        contributions.append(
            SubBundleContribution("vertical", 0, 0, True, (), ("vertical bundle is trivial when m = n",))
        )

    index = normal_neg + block_neg
    nullity = block_null + killing + vert_null
    return IndexReport(
        family=family,
        lambda_max=lam_cut,
        index_exact=index,
        index_lower_bound=index,
        nullity_exact=nullity,
        nullity_lower_bound=nullity,
        contributions=tuple(contributions),
        blocks=tuple(blocks),
        conjecture=None,
        warnings=(),
    )


def _classify_veronese(family: Veronese, lam_cut, evs, ev1) -> IndexReport:
    m = family.m
    lam1 = ev1.value
    q_n = normal_form(m, lam1).value
    q_t = tangent_form(family, lam1).value
    cr = cross_term(family, lam1).value
    cls = block_definiteness(q_n, q_t, cr)
    block = BlockNote(lam1, ev1.multiplicity, q_n, q_t, cr, cls)
    block_neg, block_null = _block_counts(cls, ev1.multiplicity)

    normal_signs, normal_neg = _normal_signs(m, evs, {lam1})
    tangent_signs = []
    for ev in evs:
        if ev.value in (0, lam1):
            continue
        bound = tangent_form(family, ev.value).value
        sign, certified = _bound_sign(bound)
        tangent_signs.append(EigenSign(ev.value, ev.multiplicity, sign, certified))
    killing = m * (m + 1) // 2

    warnings = ()
    if cls.kind != "negative_definite":
        warnings = (
            f"first-eigenvalue block is {cls.kind} for m = {m}; "
            "one certified negative direction per eigenfunction instead of two",
        )

    contributions = (
        SubBundleContribution("normal", normal_neg, 0, True, tuple(normal_signs)),
        SubBundleContribution("normal_tangent_pairs", block_neg, block_null, True,
                              (EigenSign(lam1, ev1.multiplicity, "-", True),),
                              (f"block at lam_1 is {cls.kind}",)),
        SubBundleContribution("tangent_gradient", 0, 0, False, tuple(tangent_signs),
                              ("values beyond lam_1 are one-sided bounds",)),
        SubBundleContribution("tangent_killing", 0, killing, True, (),
                              ("isometric variations of the domain are null",)),
        SubBundleContribution("vertical", 0, 0, False, (),
                              ("no parallel vertical frame; vertical spectrum not analyzed in closed form",)),
    )
    index_lb = normal_neg + block_neg
    return IndexReport(
        family=family,
        lambda_max=lam_cut,
        index_exact=None,
        index_lower_bound=index_lb,
        nullity_exact=None,
        nullity_lower_bound=killing,
        contributions=contributions,
        blocks=(block,),
        conjecture=None,
        warnings=warnings,
    )


def _classify_projective(family: VeroneseProjective, lam_cut, evs) -> IndexReport:
    m = family.m
    normal_signs, normal_neg = _normal_signs(m, evs, set())
    tangent_signs = []
    for ev in evs:
        if ev.value == 0:
            continue
        bound = tangent_form(family, ev.value).value
        sign, certified = _bound_sign(bound)
        tangent_signs.append(EigenSign(ev.value, ev.multiplicity, sign, certified))
    killing = m * (m + 1) // 2

    contributions = (
        SubBundleContribution("normal", normal_neg, 0, True, tuple(normal_signs)),
        SubBundleContribution("tangent_gradient", 0, 0, False, tuple(tangent_signs),
                              ("one-sided bounds; mixed normal/tangent terms have no closed form here",)),
        SubBundleContribution("tangent_killing", 0, killing, True, (),
                              ("isometric variations of the domain are null",)),
        SubBundleContribution("vertical", 0, 0, False, (),
                              ("no parallel vertical frame; vertical spectrum not analyzed in closed form",)),
    )
    return IndexReport(
        family=family,
        lambda_max=lam_cut,
        index_exact=None,
        index_lower_bound=normal_neg,
        nullity_exact=None,
        nullity_lower_bound=killing,
        contributions=contributions,
        blocks=(),
        conjecture=None,
        warnings=(),
    )


def _classify_clifford(family: CliffordTorus, lam_cut, evs, ev1) -> IndexReport:
    l = family.l
    m = family.domain_dim
    lam1 = ev1.value
    normal_signs, normal_neg = _normal_signs(m, evs, set())
    tangent_signs = []
    for ev in evs:
        if ev.value == 0:
            continue
        refined = ev.value == lam1
        fv = tangent_form(family, ev.value, refine_lambda1=refined)
        if fv.kind == "exact":
            tangent_signs.append(EigenSign(ev.value, ev.multiplicity, _exact_sign(fv.value), True,
                                           "refined first-eigenvalue value" if refined else ""))
        else:
            sign, certified = _bound_sign(fv.value)
            tangent_signs.append(EigenSign(ev.value, ev.multiplicity, sign, certified))
    vert_signs = []
    for ev in evs:
        q = vertical_form(family, ev.value).value
        note = ""
        if q == 0:
            note = ("diagonal form vanishes on the constant vertical section; "
                    "kernel membership is not certified here, so it is not counted")
        vert_signs.append(EigenSign(ev.value, ev.multiplicity, _exact_sign(q), True, note))
    killing = l * (l + 1)

    contributions = (
        SubBundleContribution("normal", normal_neg, 0, True, tuple(normal_signs)),
        SubBundleContribution("tangent_gradient", 0, 0, False, tuple(tangent_signs),
                              ("lam_1 value refined to 16 m (m + 8); later values are one-sided bounds",)),
        SubBundleContribution("tangent_killing", 0, killing, True, (),
                              ("isometric variations of the domain are null",)),
        SubBundleContribution("vertical", 0, 0, False, tuple(vert_signs),
                              ("closed diagonal form on the parallel vertical line; "
                               "mixed terms uncontrolled beyond it",)),
    )
    return IndexReport(
        family=family,
        lambda_max=lam_cut,
        index_exact=None,
        index_lower_bound=normal_neg,
        nullity_exact=None,
        nullity_lower_bound=killing,
        contributions=contributions,
        blocks=(),
        conjecture="index 1",
        warnings=(),
    )


# --- serialization -------------------------------------------------------


def _eigen_sign_obj(s: EigenSign) -> dict:
    obj = {
        "eigenvalue": rational_obj(s.eigenvalue),
        "multiplicity": s.multiplicity,
        "sign": s.sign,
        "certified": s.certified,
    }
    if s.note:
        obj["note"] = s.note
    return obj


def report_json_obj(report: IndexReport) -> dict:
    obj = {
        "schema_version": SCHEMA_VERSION,
        "family": family_obj(report.family),
        "lambda_max": rational_obj(report.lambda_max),
        "index_exact": report.index_exact,
        "index_lower_bound": report.index_lower_bound,
        "nullity_exact": report.nullity_exact,
        "nullity_lower_bound": report.nullity_lower_bound,
        "contributions": [
            {
                "subbundle": c.subbundle,
                "negative_count": c.negative_count,
                "null_count": c.null_count,
                "certified": c.certified,
                "eigen_attribution": [_eigen_sign_obj(s) for s in c.eigen_attribution],
                "notes": list(c.notes),
            }
            for c in report.contributions
        ],
        "blocks": [
            {
                "eigenvalue": rational_obj(b.eigenvalue),
                "multiplicity": b.multiplicity,
                "q_normal": rational_obj(b.q_normal),
                "q_tangent": rational_obj(b.q_tangent),
                "cross": rational_obj(b.cross),
                "kind": b.classification.kind,
                "kernel_direction": list(b.classification.kernel_direction)
                if b.classification.kernel_direction
                else None,
            }
            for b in report.blocks
        ],
        "conjecture": report.conjecture,
        "warnings": list(report.warnings),
    }
    if isinstance(report.family, TotallyGeodesicInclusion):
        split = tgi_nullity(report.family.m, report.family.n)
        obj["nullity_split"] = {
            "first_eigen_pairs": split.first_eigen_pairs,
            "killing": split.killing,
            "vertical": split.vertical,
        }
    return obj


def report_text(report: IndexReport) -> str:
    fam = family_obj(report.family)
    lines = [
        "family: " + " ".join(f"{k}={v}" for k, v in fam.items()),
        f"spectrum enumerated up to lambda_max = {report.lambda_max}",
    ]
    if report.index_exact is not None:
        lines.append(f"index = {report.index_exact} (exact)")
    else:
        lines.append(f"index >= {report.index_lower_bound}")
    if report.nullity_exact is not None:
        lines.append(f"nullity = {report.nullity_exact} (exact)")
    else:
        lines.append(f"nullity >= {report.nullity_lower_bound}")
    if isinstance(report.family, TotallyGeodesicInclusion):
        split = tgi_nullity(report.family.m, report.family.n)
        lines.append(
            f"  nullity split: {split.first_eigen_pairs} paired + {split.killing} killing"
            f" + {split.vertical} vertical"
        )
    for c in report.contributions:
        tag = "exact" if c.certified else "partial"
        lines.append(f"  {c.subbundle}: negatives {c.negative_count}, nulls {c.null_count} ({tag})")
        for note in c.notes:
            lines.append(f"    note: {note}")
    for b in report.blocks:
        kd = b.classification.kernel_direction
        extra = f", kernel {kd}" if kd else ""
        lines.append(
            f"  block at {b.eigenvalue} (mult {b.multiplicity}): "
            f"[{b.q_normal}, {b.cross}; {b.cross}, {b.q_tangent}] {b.classification.kind}{extra}"
        )
    for w in report.warnings:
        lines.append(f"warning: {w}")
    if report.conjecture:
        lines.append(f"conjecture (not asserted): {report.conjecture}")
    return "\n".join(lines) + "\n"
