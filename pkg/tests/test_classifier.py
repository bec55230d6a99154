"""Index and nullity classification for every family."""

from fractions import Fraction

import pytest

from bhindex.classifier import (
    classify,
    identity_nullity,
    normal_negative_directions,
    report_json_obj,
    report_text,
    tgi_nullity,
)
from bhindex.spectra import (
    CliffordTorus,
    IdentityMap,
    TotallyGeodesicInclusion,
    Veronese,
    VeroneseProjective,
)


def test_tgi_base_case():
    rep = classify(TotallyGeodesicInclusion(m=2, n=3))
    assert rep.index_exact == 1
    assert rep.nullity_exact == 10
    split = tgi_nullity(2, 3)
    assert (split.first_eigen_pairs, split.killing, split.vertical) == (3, 3, 4)
    assert split.total == 10


def test_tgi_closed_form_sweep():
    for m in range(1, 21):
        for n in range(m, 21):
            rep = classify(TotallyGeodesicInclusion(m=m, n=n))
            assert rep.index_exact == 1
            assert rep.nullity_exact == (m + 1) * (m + 2) // 2 + (m + 2) * (n - m)
            assert rep.index_lower_bound == 1
            assert rep.nullity_lower_bound == rep.nullity_exact


def test_tgi_negative_direction_is_the_constant():
    rep = classify(TotallyGeodesicInclusion(m=4, n=6))
    normal = next(c for c in rep.contributions if c.subbundle == "normal")
    assert normal.negative_count == 1
    assert normal.certified


def test_normal_negative_directions_counts():
    for m in range(2, 31):
        assert normal_negative_directions(Veronese(m=m)) == m + 2
        assert normal_negative_directions(VeroneseProjective(m=m)) == 1
    for l in range(1, 16):
        assert normal_negative_directions(CliffordTorus(l=l)) == 1
    for m in range(1, 21):
        assert normal_negative_directions(TotallyGeodesicInclusion(m=m, n=m + 1)) == 1
    with pytest.raises(ValueError):
        normal_negative_directions(IdentityMap(n=3))


def test_veronese_small_m_bound_with_warning():
    for m in (2, 3, 4):
        rep = classify(Veronese(m=m))
        assert rep.index_exact is None
        assert rep.index_lower_bound == m + 2
        assert rep.nullity_lower_bound == m * (m + 1) // 2
        assert any("indefinite" in w for w in rep.warnings)


def test_veronese_m5_bound_2m_plus_3():
    for m in (5, 6, 10):
        rep = classify(Veronese(m=m))
        assert rep.index_lower_bound == 2 * m + 3
        assert rep.warnings == ()
    assert classify(Veronese(m=5)).index_lower_bound == 13


def test_projective_bound():
    for m in (2, 3, 7):
        rep = classify(VeroneseProjective(m=m))
        assert rep.index_exact is None
        assert rep.index_lower_bound == 1
        assert rep.nullity_lower_bound == m * (m + 1) // 2


def test_clifford_conjecture_reported_not_asserted():
    for l in (1, 2, 5):
        rep = classify(CliffordTorus(l=l))
        assert rep.index_lower_bound == 1
        assert rep.index_exact is None  # the exact value is an open conjecture
        assert rep.conjecture == "index 1"
        assert rep.nullity_lower_bound == l * (l + 1)


def test_clifford_no_certified_negatives_beyond_constant():
    for l in range(1, 26):
        rep = classify(CliffordTorus(l=l))
        tangent = [c for c in rep.contributions if c.subbundle == "tangent"]
        vertical = [c for c in rep.contributions if c.subbundle == "vertical"]
        assert all(c.negative_count == 0 for c in tangent)
        assert all(c.negative_count == 0 for c in vertical)


def test_identity_nullity_values():
    assert [identity_nullity(n) for n in (2, 3, 4, 5)] == [6, 6, 10, 15]
    assert identity_nullity(7) == 28
    with pytest.raises(ValueError):
        identity_nullity(1)


def test_identity_map_rejected_by_classify():
    with pytest.raises(ValueError, match="identity_nullity"):
        classify(IdentityMap(n=4))


def test_lambda_max_override_validation():
    fam = TotallyGeodesicInclusion(m=2, n=3)
    rep = classify(fam, lambda_max=Fraction(24))
    assert rep.index_exact == 1 and rep.nullity_exact == 10
    with pytest.raises(ValueError):
        classify(fam, lambda_max=Fraction(4))  # cut before the tail is certified


def test_report_serialization_shapes():
    rep = classify(TotallyGeodesicInclusion(m=2, n=3))
    obj = report_json_obj(rep)
    assert obj["index_exact"] == 1
    assert obj["nullity_exact"] == 10
    assert obj["nullity_split"] == {"first_eigen_pairs": 3, "killing": 3, "vertical": 4}
    assert obj["schema_version"] == 1
    # exact rationals are num/den pairs, never floats
    def no_floats(x):
        if isinstance(x, float):
            return False
        if isinstance(x, dict):
            return all(no_floats(v) for v in x.values())
        if isinstance(x, list):
            return all(no_floats(v) for v in x)
        return True

    assert no_floats(obj)
    text = report_text(rep)
    assert "index = 1 (exact)" in text
    assert "nullity = 10 (exact)" in text


def test_tgi_nullity_validation():
    with pytest.raises(ValueError):
        tgi_nullity(3, 2)
    with pytest.raises(ValueError):
        tgi_nullity(0, 2)
