import pytest

from ctau.linalg import FiniteAbelianGroup
from ctau.obstruction import ForcedStatus
from ctau.pipeline import (
    cross_validate_a1,
    kq_ct_pipeline,
    moore_forced_group,
    presentation_summary,
    square_relation,
    tower_summary,
)
from ctau.structures import pi_kq_ctau

FILTRATIONS = {"eta": 1, "v1^2": 2}


@pytest.fixture(scope="module")
def result():
    return kq_ct_pipeline()


def test_all_checks(result):
    assert result.ok, result.checks
    assert set(result.checks) == {
        "les_ranks",
        "bracket_is_a",
        "figure4_additive",
        "direct_h0_extension",
        "presentation_matches_chart",
        "square_relation",
    }


def test_derived_relations(result):
    assert result.derived_relations[0].startswith("2*tilde(h1^3) = a")
    assert any(r.startswith("tilde(h1^3)^2 = b") for r in result.derived_relations)


def test_towers_after_resolution(result):
    towers = tower_summary(result.resolved, 8)
    assert towers[(4, 2)] == [(2, 0)]
    assert towers[(8, 4)] == [(4, 0)]
    assert towers[(1, 1)] == [(1, 2)]


def test_presentation_needs_hidden_extension(result):
    # without the extension, stem 4 weight 2 splits as Z/2 plus a tower
    ring = presentation_summary(pi_kq_ctau(), FILTRATIONS, 12, 8)
    unresolved = tower_summary(result.assembled, 8)
    assert unresolved != ring
    assert unresolved[(4, 2)] == [(2, 2), (3, 0)]
    assert tower_summary(result.resolved, 8) == ring


def test_square_relation_needs_torsion_free_stem8(result):
    _, ok = square_relation(result.resolved, 8)
    assert ok


def test_json_summary(result):
    doc = result.to_json()
    assert doc["certificate"]["tridegree"] == [3, 7, 2]
    assert doc["certificate"]["indeterminacy_dimension"] == 0
    assert doc["remaining_flags"] == []


def test_moore_group():
    m = moore_forced_group()
    assert m.left.is_zero()
    assert m.right == FiniteAbelianGroup(0, (2,))
    assert m.result.status == ForcedStatus.FORCED
    assert m.result.value == FiniteAbelianGroup(0, (2,))


def test_cross_validation_small():
    assert cross_validate_a1(6, 4) == []
