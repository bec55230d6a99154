"""Closed-form quadratic-form values, sign thresholds, and block classification."""

from fractions import Fraction

import pytest

from bhindex.quadforms import (
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
from bhindex.spectra import (
    CliffordTorus,
    IdentityMap,
    TotallyGeodesicInclusion,
    Veronese,
    einstein_constant,
    first_nonzero_eigenvalue,
)


def test_normal_form_values():
    assert normal_form(1, 2).value == 8
    assert normal_form(2, 4).value == 16
    assert normal_form(2, 0).value == -16
    assert normal_form(3, Fraction(9, 4)).value == Fraction(81 + 144 - 576, 16)
    assert normal_form(2, 4).kind == "exact"


def test_normal_negative_matches_threshold_surd():
    for m in range(1, 20):
        thr = normal_threshold(m)
        for num in range(0, 200):
            lam = Fraction(num, 3)
            assert normal_negative(m, lam) == (thr.sign_minus(lam) > 0)


def test_normal_threshold_separates_the_families():
    # 2(sqrt(m^2+1) - 1) < 2m: the forms with lam_1 = 2m are nonnegative there,
    # while the Veronese lam_1 = m^2/(m+1) stays below the threshold (negative)
    for m in range(1, 30):
        thr = normal_threshold(m)
        assert thr.sign_minus(2 * m) < 0
        if m >= 2:
            assert thr.sign_minus(Fraction(m * m, m + 1)) > 0


def test_tangent_form_tgi_exact():
    fam = TotallyGeodesicInclusion(m=2, n=3)
    v = tangent_form(fam, 4)
    assert v.value == 64 and v.kind == "exact"
    assert tangent_form(fam, 12).value == 1728
    assert tangent_form(fam, 0).value == 0


def test_tangent_form_clifford_bound_and_refinement():
    fam = CliffordTorus(l=4)  # m = 8
    v = tangent_form(fam, 16)
    assert v.value == 0 and v.kind == "lower_bound"
    fam = CliffordTorus(l=5)  # m = 10
    r = tangent_form(fam, 20, refine_lambda1=True)
    assert r.value == 2880 and r.kind == "exact"
    with pytest.raises(ValueError):
        tangent_form(fam, 40, refine_lambda1=True)
    with pytest.raises(ValueError):
        tangent_form(TotallyGeodesicInclusion(m=2, n=3), 4, refine_lambda1=True)


def test_tangent_form_veronese_lambda1_exact():
    fam = Veronese(m=5)
    lam1 = Fraction(25, 6)
    assert tangent_form(fam, lam1).kind == "exact"
    lam2 = Fraction(5, 6) * 2 * 6
    assert tangent_form(fam, lam2).kind == "lower_bound"


def test_tangent_form_rejects_identity_and_non_eigenvalues():
    with pytest.raises(ValueError):
        tangent_form(IdentityMap(n=3), 3)
    with pytest.raises(ValueError):
        tangent_form(TotallyGeodesicInclusion(m=2, n=3), 5)


def test_tangent_roots():
    # kappa large enough: real roots; tiny kappa at m=2: discriminant 16-8k
    roots = tangent_roots(2, 2)
    assert roots is not None
    lower, upper = roots
    assert float(lower) == pytest.approx(0.0)
    assert float(upper) == pytest.approx(0.0)
    assert tangent_roots(2, Fraction(5, 2)) is None  # disc = 16 - 20 < 0
    lower, upper = tangent_roots(6, 8)  # disc = 0: double root at 2k - m - 2 = 8
    assert lower == 8 and upper == 8
    lower, upper = tangent_roots(12, 22)  # inclusion m = 12: disc4 = 20
    assert float(lower) == pytest.approx(30 - 20**0.5)
    assert float(upper) == pytest.approx(30 + 20**0.5)


def test_veronese_tangent_roots_closed_form():
    for m in range(2, 12):
        kappa = Fraction(m * (m - 1), m + 1)
        generic = tangent_roots(m, kappa)
        special = veronese_tangent_roots(m)
        assert generic is not None
        for g, s in zip(generic, special):
            assert float(g) == pytest.approx(float(s), rel=1e-12)


def test_vertical_form_values():
    fam = TotallyGeodesicInclusion(m=1, n=2)
    assert vertical_form(fam, 2).value == 0
    assert vertical_form(fam, 8).value == 48
    with pytest.raises(ValueError):
        vertical_form(TotallyGeodesicInclusion(m=2, n=2), 4)
    tor = CliffordTorus(l=1)
    assert vertical_form(tor, 0).value == 0
    assert vertical_form(tor, 4).value == 64
    with pytest.raises(ValueError):
        vertical_form(Veronese(m=3), Fraction(9, 4))


def test_cross_term_values():
    fam = TotallyGeodesicInclusion(m=1, n=2)
    assert cross_term(fam, 2).value == -16
    assert cross_term(TotallyGeodesicInclusion(m=2, n=3), 4).value == -32
    v = cross_term(Veronese(m=2), Fraction(4, 3))
    assert v.value == Fraction(-32, 9)
    with pytest.raises(ValueError):
        cross_term(Veronese(m=2), 4)  # lam_2, no closed form
    with pytest.raises(ValueError):
        cross_term(CliffordTorus(l=1), 4)


def test_block_definiteness_cases():
    b = block_definiteness(16, 64, -32)
    assert b.kind == "positive_semidefinite"
    assert b.determinant == 0 and b.kernel_direction == (2, 1)
    assert block_definiteness(1, 1, 0).kind == "positive_definite"
    assert block_definiteness(-1, -1, 0).kind == "negative_definite"
    assert block_definiteness(1, -1, 0).kind == "indefinite"
    assert block_definiteness(0, 0, 0).kind == "zero"
    nb = block_definiteness(-2, -2, 2)
    assert nb.kind == "negative_semidefinite" and nb.kernel_direction == (1, 1)
    kb = block_definiteness(0, 3, 0)
    assert kb.kind == "positive_semidefinite" and kb.kernel_direction == (1, 0)


def test_first_eigenvalue_block_identity_across_families():
    # lam_1 = 2m makes q_n q_t = cross^2 with kernel (2,1): the paired null family
    for m in range(1, 51):
        fam = TotallyGeodesicInclusion(m=m, n=m + 1)
        lam1 = first_nonzero_eigenvalue(fam).value
        b = block_definiteness(
            normal_form(m, lam1).value,
            tangent_form(fam, lam1).value,
            cross_term(fam, lam1).value,
        )
        assert b.kind == "positive_semidefinite"
        assert b.determinant == 0
        assert b.kernel_direction == (2, 1)


def test_veronese_lambda1_block_flips_at_m5():
    # the normal form at lam_1 is negative for every m; for m <= 4 the block
    # is indefinite (one negative direction per eigenfunction), from m = 5 it
    # is negative definite (two per eigenfunction, giving the 2m+3 bound)
    for m in range(2, 12):
        fam = Veronese(m=m)
        lam1 = first_nonzero_eigenvalue(fam).value
        b = block_definiteness(
            normal_form(m, lam1).value,
            tangent_form(fam, lam1).value,
            cross_term(fam, lam1).value,
        )
        assert (b.kind == "indefinite") == (m in (2, 3, 4))
        if m >= 5:
            assert b.kind == "negative_definite"


def test_gates():
    g = gates(2, 2, 4)  # inclusion m=2: kappa=2, lam1=4
    assert g.lichnerowicz_pass and g.identity_stable
    assert g.einstein_pass  # (m+2)^2/8 = 2, equality passes
    g2 = gates(10, 18, 20)  # inclusion m=10
    assert g2.einstein_pass and g2.lichnerowicz_pass
    torus = gates(6, 8, 12)  # clifford l=3
    assert not torus.identity_stable  # 2 kappa = 16 > 12
    with pytest.raises(ValueError):
        gates(1, 0, 2)


def test_gates_einstein_window_for_inclusion():
    # kappa = 2(m-1) >= (m+2)^2/8 exactly for m in [2, 10]
    for m in range(2, 30):
        g = gates(m, 2 * (m - 1), 2 * m)
        assert g.einstein_pass == (2 <= m <= 10)


def test_float_rejected():
    with pytest.raises(TypeError):
        normal_form(2, 4.0)
    with pytest.raises(TypeError):
        block_definiteness(1.0, 2, 0)
