"""Exact surd comparisons checked against a high-precision decimal oracle."""

import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from bhindex.surd import QuadraticSurd


def oracle_sign(a: Fraction, b: Fraction, q: Fraction, d: Fraction) -> int:
    """Sign of a + b*sqrt(d) - q, exact ties resolved by rational arithmetic."""
    s = a - q
    if b == 0:
        return (s > 0) - (s < 0)
    # zero iff s/b = -sqrt(d), which needs opposite signs and matching squares
    t = s / b
    if t <= 0 and t * t == d:
        return 0
    getcontext().prec = 80
    dec = lambda f: Decimal(f.numerator) / Decimal(f.denominator)
    val = dec(s) + dec(b) * dec(d).sqrt()
    return 1 if val > 0 else -1


def test_perfect_square_radicand_folds_to_rational():
    x = QuadraticSurd(Fraction(1), Fraction(3), Fraction(49, 4))
    assert x.is_rational
    assert x.a == Fraction(1) + 3 * Fraction(7, 2)
    assert x == Fraction(23, 2)


def test_zero_coefficient_normalizes():
    x = QuadraticSurd(Fraction(5), Fraction(0), Fraction(2))
    assert x.is_rational and x.d == 0


def test_negative_radicand_rejected():
    with pytest.raises(ValueError):
        QuadraticSurd(Fraction(0), Fraction(1), Fraction(-1))


def test_sign_minus_exact_tie():
    # 3 - 2*sqrt(9/4) == 0 would fold; build a genuine tie via square radicand
    x = QuadraticSurd(Fraction(-6), Fraction(2), Fraction(5))
    # x - q = 0 iff q = -6 + 2 sqrt(5); q rational can never tie
    assert x.sign_minus(Fraction(-3, 2)) in (-1, 1)
    y = QuadraticSurd(Fraction(7), Fraction(0), Fraction(0))
    assert y.sign_minus(7) == 0


def test_random_against_decimal_oracle():
    rng = random.Random(20240811)
    for _ in range(2000):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 40))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 40))
        d = Fraction(rng.randint(0, 400), rng.randint(1, 20))
        q = Fraction(rng.randint(-80, 80), rng.randint(1, 40))
        x = QuadraticSurd(a, b, d)
        assert x.sign_minus(q) == oracle_sign(x.a, x.b, q, x.d)


def test_near_tie_resolution_beyond_float_precision():
    # continued-fraction convergents of sqrt(5): p/q with |sqrt(5)-p/q| < 1/q^2;
    # floats cannot separate x = -6 + 2 sqrt(5) from r = -6 + 2 p/q, the exact
    # comparison must
    x = QuadraticSurd(Fraction(-6), Fraction(2), Fraction(5))
    convergents = []
    h0, h1 = 1, 2  # sqrt(5) = [2; 4, 4, 4, ...]
    k0, k1 = 0, 1
    for _ in range(25):
        h0, h1 = h1, 4 * h1 + h0
        k0, k1 = k1, 4 * k1 + k0
        convergents.append(Fraction(h1, k1))
    for c in convergents[-6:]:
        r = -6 + 2 * c
        expected = oracle_sign(x.a, x.b, r, x.d)
        assert expected != 0
        assert x.sign_minus(r) == expected
        # the float gap underflows long before the exact one does
        assert float(x) == pytest.approx(float(r), abs=1e-9)


def test_comparison_operators_mixed_types():
    x = QuadraticSurd(Fraction(-2), Fraction(2), Fraction(5))  # 2(sqrt(5)-1) ~ 2.472
    assert x > 2
    assert x < Fraction(5, 2)
    assert x >= x
    assert not (x == 2)
    y = QuadraticSurd(Fraction(-2), Fraction(2), Fraction(5))
    assert x == y
    z = QuadraticSurd(Fraction(-1), Fraction(2), Fraction(5))
    assert x < z
    assert hash(x) == hash(y)


def test_distinct_radicand_comparison_unsupported():
    x = QuadraticSurd(Fraction(0), Fraction(1), Fraction(2))
    y = QuadraticSurd(Fraction(0), Fraction(1), Fraction(3))
    with pytest.raises(NotImplementedError):
        x < y  # noqa: B015
