"""Exact Laplace-Beltrami spectra of the model domains.

Every eigenvalue is a reduced fraction and every multiplicity an integer;
nothing in this module touches floating point.  The five families are the
domains that feed the quadratic-form and classification layers:

* ``TotallyGeodesicInclusion``: the round sphere S^m(1/sqrt 2) sitting
  totally geodesically inside S^n(1/sqrt 2), then pushed into S^(n+1)
  through the small-sphere ("tropic") inclusion;
* ``Veronese``: the quadratic minimal immersion of S^m(sqrt((m+1)/m));
* ``VeroneseProjective``: its projective quotient (even levels only);
* ``CliffordTorus``: the product S^l(1/2) x S^l(1/2) minimally immersed
  in S^(2l+1)(1/sqrt 2), m = 2l;
* ``IdentityMap``: the unit round sphere carrying its identity map
  (stability reference case; it is not a tropic composition).

Scaling convention: on (S^m, c * g_can) the distinct eigenvalues are
k(m+k-1)/c with the round-sphere multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence, Union

from .serialize import rational_obj

__all__ = [
    "Eigenvalue",
    "EinsteinData",
    "TotallyGeodesicInclusion",
    "Veronese",
    "VeroneseProjective",
    "CliffordTorus",
    "IdentityMap",
    "ManifoldFamily",
    "sphere_multiplicity",
    "sphere_level",
    "family_spectrum",
    "distinct_eigenvalues",
    "first_nonzero_eigenvalue",
    "einstein_constant",
    "isometry_group_dim",
    "is_domain_eigenvalue",
    "make_family",
    "family_kind",
    "family_obj",
    "level_str",
    "spectrum_csv",
    "spectrum_json_obj",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("exact rational required, got float")
    return Fraction(x)


def sphere_multiplicity(m: int, k: int) -> int:
    """Multiplicity of the k-th distinct Laplace eigenvalue on the round S^m.

    For m >= 2 this is (2k+m-1) (k+m-2)! / (k! (m-1)!); the circle (m = 1)
    has multiplicity 1 at k = 0 and 2 for every k >= 1.
    """
    if m < 1:
        raise ValueError("sphere dimension must be >= 1")
    if k < 0:
        raise ValueError("level must be >= 0")
    if k == 0:
        return 1
    if m == 1:
        return 2
    return (2 * k + m - 1) * factorial(k + m - 2) // (factorial(k) * factorial(m - 1))


@dataclass(frozen=True)
class Eigenvalue:
    """One distinct eigenvalue: exact value, level attribution, multiplicity.

    ``level`` is the sphere level k for sphere-type domains, and a tuple of
    (p, q) factor-level pairs for the product torus (all pairs that produce
    the same value, sorted).
    """

    value: Fraction
    level: Union[int, tuple]
    multiplicity: int

    def __post_init__(self):
        object.__setattr__(self, "value", _as_fraction(self.value))
        if self.value < 0:
            raise ValueError("eigenvalue must be >= 0")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")


@dataclass(frozen=True)
class EinsteinData:
    """Einstein constant kappa with Ric = kappa * g (all domains here are Einstein)."""

    kappa: Fraction
    is_einstein: bool


@dataclass(frozen=True)
class TotallyGeodesicInclusion:
    """S^m(1/sqrt 2) -> S^n(1/sqrt 2), composed with the tropic inclusion into S^(n+1)."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m >= 1 required")
        if self.n < self.m:
            raise ValueError("m <= n required")

    @property
    def domain_dim(self) -> int:
        return self.m

    @property
    def metric_scale(self) -> Fraction:
        # domain = (S^m, 1/2 g_can)
        return Fraction(1, 2)

    @property
    def target_sphere_dim(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class Veronese:
    """Quadratic minimal immersion of S^m(sqrt((m+1)/m)) into S^(m+p)(1/sqrt 2), p = (m-1)(m+2)/2."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m >= 2 required")

    @property
    def domain_dim(self) -> int:
        return self.m

    @property
    def metric_scale(self) -> Fraction:
        return Fraction(self.m + 1, self.m)

    @property
    def target_sphere_dim(self) -> int:
        p = (self.m - 1) * (self.m + 2) // 2
        return self.m + p + 1


@dataclass(frozen=True)
class VeroneseProjective:
    """Projective quotient of the quadratic immersion: RP^m with (m+1)/m times the round metric."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m >= 2 required")

    @property
    def domain_dim(self) -> int:
        return self.m

    @property
    def metric_scale(self) -> Fraction:
        return Fraction(self.m + 1, self.m)

    @property
    def target_sphere_dim(self) -> int:
        p = (self.m - 1) * (self.m + 2) // 2
        return self.m + p + 1


@dataclass(frozen=True)
class CliffordTorus:
    """S^l(1/2) x S^l(1/2) minimally immersed in S^(2l+1)(1/sqrt 2); domain dimension m = 2l."""

    l: int

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("l >= 1 required")

    @property
    def domain_dim(self) -> int:
        return 2 * self.l

    @property
    def factor_scale(self) -> Fraction:
        # each factor = (S^l, 1/4 g_can)
        return Fraction(1, 4)

    @property
    def target_sphere_dim(self) -> int:
        return 2 * self.l + 2


@dataclass(frozen=True)
class IdentityMap:
    """The unit round sphere S^n with its identity map (stability reference)."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n >= 2 required")

    @property
    def domain_dim(self) -> int:
        return self.n

    @property
    def metric_scale(self) -> Fraction:
        return Fraction(1)

    @property
    def target_sphere_dim(self) -> int:
        return self.n


ManifoldFamily = Union[
    TotallyGeodesicInclusion,
    Veronese,
    VeroneseProjective,
    CliffordTorus,
    IdentityMap,
]


def sphere_level(m: int, scale, k: int) -> Eigenvalue:
    """Level-k eigenvalue of (S^m, scale * g_can): value k(m+k-1)/scale."""
    scale = _as_fraction(scale)
    if scale <= 0:
        raise ValueError("metric scale must be > 0")
    if m < 1:
        raise ValueError("sphere dimension must be >= 1")
    if k < 0:
        raise ValueError("level must be >= 0")
    value = Fraction(k * (m + k - 1)) / scale
    return Eigenvalue(value=value, level=k, multiplicity=sphere_multiplicity(m, k))


def _clifford_spectrum(family: CliffordTorus, lambda_max: Fraction) -> list[Eigenvalue]:
    l = family.l
    by_value: dict[Fraction, list[tuple[int, int]]] = {}
    p = 0
    while Fraction(4 * p * (l + p - 1)) <= lambda_max:
        q = 0
        while True:
            value = Fraction(4 * (p * (l + p - 1) + q * (l + q - 1)))
            if value > lambda_max:
                break
            by_value.setdefault(value, []).append((p, q))
            q += 1
        p += 1
    out = []
    for value in sorted(by_value):
        pairs = tuple(sorted(by_value[value]))
        mult = sum(sphere_multiplicity(l, p) * sphere_multiplicity(l, q) for p, q in pairs)
        out.append(Eigenvalue(value=value, level=pairs, multiplicity=mult))
    return out


def family_spectrum(family: ManifoldFamily, lambda_max) -> list[Eigenvalue]:
    """All distinct eigenvalues <= lambda_max, ascending, with merged multiplicities."""
    lambda_max = _as_fraction(lambda_max)
    if lambda_max < 0:
        raise ValueError("lambda_max must be >= 0")
    if isinstance(family, CliffordTorus):
        return _clifford_spectrum(family, lambda_max)
    m = family.domain_dim
    scale = family.metric_scale
    out = []
    k = 0
    while True:
        if isinstance(family, VeroneseProjective):
            ev = Eigenvalue(
                value=Fraction(2 * k * (m + 2 * k - 1)) / scale,
                level=k,
                multiplicity=sphere_multiplicity(m, 2 * k),
            )
        else:
            ev = sphere_level(m, scale, k)
        if ev.value > lambda_max:
            break
        out.append(ev)
        k += 1
    return out


def distinct_eigenvalues(family: ManifoldFamily) -> Iterator[Eigenvalue]:
    """Yield the distinct eigenvalues in ascending order, without bound."""
    if isinstance(family, CliffordTorus):
        cap = Fraction(16 * family.l)
        seen = 0
        while True:
            spec = _clifford_spectrum(family, cap)
            for ev in spec[seen:]:
                yield ev
            seen = len(spec)
            cap *= 2
    else:
        k = 0
        m = family.domain_dim
        scale = family.metric_scale
        while True:
            if isinstance(family, VeroneseProjective):
                yield Eigenvalue(
                    value=Fraction(2 * k * (m + 2 * k - 1)) / scale,
                    level=k,
                    multiplicity=sphere_multiplicity(m, 2 * k),
                )
            else:
                yield sphere_level(m, scale, k)
            k += 1


def first_nonzero_eigenvalue(family: ManifoldFamily) -> Eigenvalue:
    """The first positive eigenvalue lam1 (closed form per family)."""
    for ev in distinct_eigenvalues(family):
        if ev.value > 0:
            return ev
    raise AssertionError("unreachable")


def einstein_constant(family: ManifoldFamily) -> EinsteinData:
    """Einstein constant of the domain: Ric = kappa * g.

    (S^m, c g_can) has kappa = (m-1)/c; the product torus has
    kappa = 4(l-1) (flat for l = 1, still Einstein).
    """
    if isinstance(family, CliffordTorus):
        return EinsteinData(kappa=Fraction(4 * (family.l - 1)), is_einstein=True)
    m = family.domain_dim
    return EinsteinData(kappa=Fraction(m - 1) / family.metric_scale, is_einstein=True)


def isometry_group_dim(family: ManifoldFamily) -> int:
    """Dimension of the isometry group of the domain."""
    if isinstance(family, CliffordTorus):
        l = family.l
        return l * (l + 1)
    m = family.domain_dim
    return m * (m + 1) // 2


def is_domain_eigenvalue(family: ManifoldFamily, lam) -> bool:
    lam = _as_fraction(lam)
    if lam < 0:
        return False
    for ev in distinct_eigenvalues(family):
        if ev.value == lam:
            return True
        if ev.value > lam:
            return False


# --- CLI-facing helpers -------------------------------------------------

_KINDS = {
    "tgi": TotallyGeodesicInclusion,
    "veronese": Veronese,
    "veronese-rp": VeroneseProjective,
    "clifford": CliffordTorus,
    "identity": IdentityMap,
}


def make_family(kind: str, m: int | None = None, n: int | None = None, l: int | None = None) -> ManifoldFamily:
    """Build a family from CLI-style arguments; raises ValueError on bad combinations."""
    if kind not in _KINDS:
        raise ValueError(f"unknown family kind {kind!r}; choose from {sorted(_KINDS)}")
    try:
        if kind == "tgi":
            if m is None or n is None:
                raise ValueError("tgi requires --m and --n")
            return TotallyGeodesicInclusion(m=m, n=n)
        if kind in ("veronese", "veronese-rp"):
            if m is None:
                raise ValueError(f"{kind} requires --m")
            return _KINDS[kind](m=m)
        if kind == "clifford":
            if l is None:
                raise ValueError("clifford requires --l")
            return CliffordTorus(l=l)
        if n is None:
            raise ValueError("identity requires --n")
        return IdentityMap(n=n)
    except TypeError as exc:
        raise ValueError(str(exc)) from exc


def family_kind(family: ManifoldFamily) -> str:
    for kind, cls in _KINDS.items():
        if isinstance(family, cls):
            return kind
    raise ValueError(f"unknown family {family!r}")


def family_obj(family: ManifoldFamily) -> dict:
    obj = {"kind": family_kind(family)}
    for field in ("m", "n", "l"):
        if hasattr(family, field):
            obj[field] = getattr(family, field)
    return obj


def level_str(level) -> str:
    if isinstance(level, int):
        return str(level)
    return "|".join(f"{p},{q}" for p, q in level)


def _level_obj(level):
    if isinstance(level, int):
        return level
    return [[p, q] for p, q in level]


def spectrum_csv(entries: Sequence[Eigenvalue]) -> str:
    lines = ["value_num,value_den,level,multiplicity"]
    for ev in entries:
        level = level_str(ev.level)
        if "," in level:
            # torus levels carry (p,q) pairs; keep the row at four columns
            level = f'"{level}"'
        lines.append(f"{ev.value.numerator},{ev.value.denominator},{level},{ev.multiplicity}")
    return "\n".join(lines) + "\n"


def spectrum_json_obj(family: ManifoldFamily, lambda_max, entries: Sequence[Eigenvalue]) -> dict:
    from .serialize import SCHEMA_VERSION

    return {
        "schema_version": SCHEMA_VERSION,
        "family": family_obj(family),
        "lambda_max": rational_obj(lambda_max),
        "eigenvalues": [
            {
                "value": rational_obj(ev.value),
                "level": _level_obj(ev.level),
                "multiplicity": ev.multiplicity,
            }
            for ev in entries
        ],
    }
