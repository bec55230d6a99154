"""Exact numbers of the form a + b*sqrt(d) with rational a, b and d >= 0.

The negativity thresholds and polynomial roots that decide sign questions
in this package are quadratic irrationals.  Comparing them against exact
rational eigenvalues must not go through floating point, so this class
resolves every comparison by integer arithmetic on numerators and
denominators only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def _exact_sqrt(q: Fraction):
    """Return sqrt(q) as a Fraction when q is a perfect rational square."""
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _sign(q: Fraction) -> int:
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


@dataclass(frozen=True)
class QuadraticSurd:
    """Value a + b*sqrt(d), all fields exact rationals, d >= 0.

    Perfect-square radicands are folded into the rational part on
    construction, so ``is_rational`` is meaningful.  Comparisons against
    rationals (int/Fraction) are exact; comparisons between two surds are
    supported when their radicands agree after normalization.
    """

    a: Fraction
    b: Fraction
    d: Fraction

    def __post_init__(self):
        a = Fraction(self.a)
        b = Fraction(self.b)
        d = Fraction(self.d)
        if d < 0:
            raise ValueError("radicand must be >= 0")
        if b == 0 or d == 0:
            b = Fraction(0)
            d = Fraction(0)
        else:
            root = _exact_sqrt(d)
            if root is not None:
                a = a + b * root
                b = Fraction(0)
                d = Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign_minus(self, q) -> int:
        """Exact sign of (self - q) for rational q, in {-1, 0, +1}."""
        q = Fraction(q)
        s = self.a - q
        b = self.b
        if b == 0:
            return _sign(s)
        # value = s + b*sqrt(d), d > 0 irrational-or-not but sqrt(d) > 0
        if b > 0 and s >= 0:
            return 1
        if b < 0 and s <= 0:
            return -1
        # opposite signs: compare s^2 against b^2 d
        lhs = s * s
        rhs = b * b * self.d
        if b > 0:  # s < 0: positive iff b^2 d > s^2
            return _sign(rhs - lhs)
        return _sign(lhs - rhs)  # b < 0, s > 0

    def _sign_vs(self, other) -> int:
        if isinstance(other, QuadraticSurd):
            if other.is_rational:
                return self.sign_minus(other.a)
            if self.is_rational:
                return -other.sign_minus(self.a)
            if self.d == other.d:
                diff = QuadraticSurd(self.a - other.a, self.b - other.b, self.d)
                return diff.sign_minus(0)
            raise NotImplementedError(
                "comparison of surds with distinct radicands is not needed here"
            )
        return self.sign_minus(other)

    def __lt__(self, other):
        return self._sign_vs(other) < 0

    def __le__(self, other):
        return self._sign_vs(other) <= 0

    def __gt__(self, other):
        return self._sign_vs(other) > 0

    def __ge__(self, other):
        return self._sign_vs(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.sign_minus(other) == 0
        if isinstance(other, QuadraticSurd):
            try:
                return self._sign_vs(other) == 0
            except NotImplementedError:
                return NotImplemented
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * float(self.d) ** 0.5

    def __repr__(self):
        if self.is_rational:
            return f"QuadraticSurd({self.a})"
        return f"QuadraticSurd({self.a} + {self.b}*sqrt({self.d}))"

    def to_obj(self) -> dict:
        from .serialize import rational_obj

        return {
            "a": rational_obj(self.a),
            "b": rational_obj(self.b),
            "d": rational_obj(self.d),
        }
