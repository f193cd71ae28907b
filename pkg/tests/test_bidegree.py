import pytest
from hypothesis import given, strategies as st

from ctau.bidegree import (
    Bidegree,
    RegradingError,
    Rule,
    anss_bockstein_correspondence,
    anss_to_bockstein,
    ct_endo_region_zero,
    ct_pi_region_zero,
    moore_pi_region_zero,
    motivic_to_novikov,
    novikov_region_rule,
    novikov_to_motivic,
)

GRID = [(s, w) for s in range(-20, 21) for w in range(-20, 21)]


def test_regrading_examples():
    assert motivic_to_novikov(0, 0) == (0, 0)
    assert motivic_to_novikov(1, 1) == (1, 2)
    assert motivic_to_novikov(3, -3) == (-9, -6)
    assert novikov_to_motivic(1, 2) == (1, 1)
    with pytest.raises(RegradingError, match="internal degree must be even"):
        novikov_to_motivic(1, 3)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_round_trip(s, w):
    f, t = motivic_to_novikov(s, w)
    assert t % 2 == 0
    assert novikov_to_motivic(f, t) == (s, w)
    b = Bidegree.motivic(s, w)
    assert b.to_novikov().to_motivic() == b


def test_pi_examples():
    assert ct_pi_region_zero(3, -3).rule is Rule.NONPOSITIVE_FILTRATION
    assert ct_pi_region_zero(3, -3).is_provably_zero
    v = ct_pi_region_zero(0, 0)
    assert not v.is_provably_zero and v.rule is Rule.EXCEPTION
    assert ct_pi_region_zero(1, 1).rule is Rule.NOT_COVERED


def test_endo_examples():
    assert ct_endo_region_zero(0, -1).is_provably_zero
    assert all(ct_endo_region_zero(n, -n).is_provably_zero for n in range(1, 9))
    assert ct_endo_region_zero(0, 0).rule is Rule.EXCEPTION


def test_moore_examples():
    assert moore_pi_region_zero(5, -4).is_provably_zero
    assert not moore_pi_region_zero(0, 0).is_provably_zero
    assert not moore_pi_region_zero(1, 0).is_provably_zero
    assert moore_pi_region_zero(4, -2).is_provably_zero


def test_three_rules_match_novikov_rules():
    for s, w in GRID:
        f, t = motivic_to_novikov(s, w)
        assert (2 * w <= s) == (f <= 0)
        assert (s < 0) == (t - f < 0)
        assert (w > s) == (f > t - f)
        mine = ct_pi_region_zero(s, w)
        theirs = novikov_region_rule(f, t)
        assert mine.rule == (theirs or Rule.NOT_COVERED)


def test_endo_implied_by_two_pi_verdicts():
    # the endomorphism group sits between pi(s,w) and pi(s+1,w-1)
    for s, w in GRID:
        if ct_endo_region_zero(s, w).is_provably_zero:
            assert ct_pi_region_zero(s, w).is_provably_zero
            assert ct_pi_region_zero(s + 1, w - 1).is_provably_zero
    # the converse is strictly weaker than the stated endo rule
    assert ct_pi_region_zero(1, 2).is_provably_zero and ct_pi_region_zero(2, 1).is_provably_zero
    assert ct_endo_region_zero(1, 2).rule is Rule.NOT_COVERED


def test_bockstein():
    assert anss_bockstein_correspondence(1).as_tuple() == (3, 1, 4, 2)
    assert anss_bockstein_correspondence(2).as_tuple() == (5, 2, 6, 3)
    with pytest.raises(ValueError):
        anss_bockstein_correspondence(0)
    for r in range(1, 51):
        c = anss_bockstein_correspondence(r)
        assert anss_to_bockstein(c.anss_differential) == r
        assert c.anss_page == 2 * c.bockstein_page
