"""Spectrum enumeration against brute-force combinatorial oracles."""

from fractions import Fraction
from math import comb

import pytest

from bhindex.spectra import (
    CliffordTorus,
    IdentityMap,
    TotallyGeodesicInclusion,
    Veronese,
    VeroneseProjective,
    einstein_constant,
    family_spectrum,
    first_nonzero_eigenvalue,
    is_domain_eigenvalue,
    isometry_group_dim,
    make_family,
    sphere_multiplicity,
    spectrum_csv,
)


def harmonic_dim(m: int, k: int) -> int:
    """dim of degree-k homogeneous harmonics in m+1 variables, by polynomial count."""
    if k == 0:
        return 1
    if k == 1:
        return m + 1
    return comb(k + m, m) - comb(k - 2 + m, m)


def test_sphere_multiplicity_matches_polynomial_count():
    for m in range(1, 9):
        for k in range(0, 12):
            assert sphere_multiplicity(m, k) == harmonic_dim(m, k)


def test_tgi_spectrum_levels():
    fam = TotallyGeodesicInclusion(m=3, n=5)
    entries = family_spectrum(fam, 60)
    assert [e.value for e in entries] == [0, 6, 16, 30, 48]  # 2k(k+2)
    assert [e.multiplicity for e in entries] == [1, 4, 9, 16, 25]


def test_veronese_spectrum_scaled():
    fam = Veronese(m=4)
    entries = family_spectrum(fam, 20)
    # (4/5) k (k+3)
    assert [e.value for e in entries] == [0, Fraction(16, 5), 8, Fraction(72, 5)]
    assert [e.multiplicity for e in entries] == [1, 5, 14, 30]


def test_projective_spectrum_takes_even_levels():
    fam = VeroneseProjective(m=3)
    entries = family_spectrum(fam, 30)
    full = family_spectrum(Veronese(m=3), 30)
    assert [e.value for e in entries] == [v for i, v in enumerate(x.value for x in full) if i % 2 == 0]
    for e in entries[1:]:
        k = e.level
        assert e.multiplicity == sphere_multiplicity(3, 2 * k)


def brute_clifford(l: int, lam_max: int) -> dict:
    """Merged multiset sum of two factor spectra, each 4k(k+l-1) with sphere mults."""
    factor = {}
    k = 0
    while True:
        val = 4 * k * (k + l - 1)
        if val > lam_max and k >= 2:
            break
        if val <= lam_max:
            factor[k] = sphere_multiplicity(l, k)
        k += 1
    merged = {}
    for p, mp in factor.items():
        for q, mq in factor.items():
            val = 4 * (p * (l + p - 1) + q * (l + q - 1))
            if val <= lam_max:
                merged[val] = merged.get(val, 0) + mp * mq
    return merged


@pytest.mark.parametrize("l", [1, 2, 3])
def test_clifford_spectrum_is_factor_sum(l):
    entries = family_spectrum(CliffordTorus(l=l), 80)
    oracle = brute_clifford(l, 80)
    assert {e.value: e.multiplicity for e in entries} == oracle
    values = [e.value for e in entries]
    assert values == sorted(values)


def test_clifford_l1_example():
    entries = family_spectrum(CliffordTorus(l=1), 8)
    assert [(e.value, e.multiplicity) for e in entries] == [(0, 1), (4, 4), (8, 4)]


def test_first_eigenvalue_closed_forms():
    assert first_nonzero_eigenvalue(TotallyGeodesicInclusion(m=4, n=6)).value == 8
    assert first_nonzero_eigenvalue(Veronese(m=4)).value == Fraction(16, 5)
    assert first_nonzero_eigenvalue(VeroneseProjective(m=4)).value == 8
    assert first_nonzero_eigenvalue(CliffordTorus(l=3)).value == 12
    for fam in (TotallyGeodesicInclusion(m=2, n=5), Veronese(m=5), CliffordTorus(l=2)):
        entries = family_spectrum(fam, first_nonzero_eigenvalue(fam).value)
        assert entries[1].value == first_nonzero_eigenvalue(fam).value


def test_lambda1_at_most_2m_with_known_equality_cases():
    for m in range(1, 51):
        fam = TotallyGeodesicInclusion(m=m, n=m + 2)
        assert first_nonzero_eigenvalue(fam).value == 2 * m
    for m in range(2, 51):
        assert first_nonzero_eigenvalue(Veronese(m=m)).value < 2 * m
        assert first_nonzero_eigenvalue(VeroneseProjective(m=m)).value == 2 * m
    for l in range(1, 26):
        assert first_nonzero_eigenvalue(CliffordTorus(l=l)).value == 2 * (2 * l)


def test_einstein_constants():
    assert einstein_constant(TotallyGeodesicInclusion(m=3, n=4)).kappa == 4
    assert einstein_constant(Veronese(m=3)).kappa == Fraction(3 * 2, 4)  # m(m-1)/(m+1)
    assert einstein_constant(CliffordTorus(l=1)).kappa == 0
    assert einstein_constant(CliffordTorus(l=3)).kappa == 8


def test_isometry_dimensions():
    assert isometry_group_dim(TotallyGeodesicInclusion(m=3, n=7)) == 6
    assert isometry_group_dim(Veronese(m=4)) == 10
    assert isometry_group_dim(CliffordTorus(l=1)) == 2
    assert isometry_group_dim(CliffordTorus(l=3)) == 12


def test_is_domain_eigenvalue():
    fam = CliffordTorus(l=1)
    for lam in (0, 4, 8, 16, 20):
        assert is_domain_eigenvalue(fam, lam)
    for lam in (2, 5, Fraction(7, 2)):
        assert not is_domain_eigenvalue(fam, lam)
    assert is_domain_eigenvalue(Veronese(m=3), Fraction(9, 4))


def test_make_family_validation():
    assert isinstance(make_family("identity", n=4), IdentityMap)
    with pytest.raises(ValueError):
        make_family("tgi", m=3)  # missing n
    with pytest.raises(ValueError):
        make_family("tgi", m=5, n=3)  # m > n
    with pytest.raises(ValueError):
        make_family("veronese", m=1)
    with pytest.raises(ValueError):
        make_family("clifford", l=0)
    with pytest.raises(ValueError):
        make_family("nonsense")


def test_spectrum_csv_is_four_columns():
    rows = spectrum_csv(family_spectrum(CliffordTorus(l=1), 8)).strip().split("\n")
    assert rows[0] == "value_num,value_den,level,multiplicity"
    import csv
    from io import StringIO

    parsed = list(csv.reader(StringIO("\n".join(rows))))
    assert all(len(r) == 4 for r in parsed)
    assert parsed[1] == ["0", "1", "0,0", "1"]


def test_negative_lambda_max_rejected():
    with pytest.raises(ValueError):
        family_spectrum(CliffordTorus(l=1), -1)
