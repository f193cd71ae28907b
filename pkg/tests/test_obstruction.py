import pytest
from hypothesis import given, strategies as st

from ctau.bidegree import Bidegree, Rule
from ctau.linalg import FiniteAbelianGroup
from ctau.obstruction import (
    ForcedStatus,
    Kind,
    ainfty_obstruction_bidegree,
    audit,
    einfty_obstruction_bidegrees,
    forced_les_group,
    smash_power_decomposition,
    symbolic_audit,
)


def test_decomposition_examples():
    assert [(b.as_tuple(), m) for b, m in smash_power_decomposition(2).summands] == [((0, 0), 1), ((1, -1), 1)]
    assert [m for _, m in smash_power_decomposition(3).summands] == [1, 2, 1]
    assert [m for _, m in smash_power_decomposition(5).summands] == [1, 4, 6, 4, 1]
    with pytest.raises(ValueError):
        smash_power_decomposition(1)


def test_decomposition_total():
    for n in range(2, 201):
        assert smash_power_decomposition(n).total_multiplicity == 2 ** (n - 1)


def test_einf_bidegrees():
    e = [(b.as_tuple(), k) for m, i, b, k in einfty_obstruction_bidegrees(4) if m == 2]
    assert e == [((1, 0), 1), ((2, -1), 1)]
    u = [(b.as_tuple(), k) for m, i, b, k in einfty_obstruction_bidegrees(4, "uniqueness") if m == 2]
    assert u == [((2, 0), 1), ((3, -1), 1)]
    row = {(m, i): (b.as_tuple(), k) for m, i, b, k in einfty_obstruction_bidegrees(6)}
    assert row[(4, 2)] == ((5, -2), 3)
    with pytest.raises(ValueError):
        einfty_obstruction_bidegrees(3)


def test_ainf_bidegrees():
    assert ainfty_obstruction_bidegree(3) == Bidegree.motivic(3, -3)
    assert ainfty_obstruction_bidegree(4) == Bidegree.motivic(5, -4)
    assert ainfty_obstruction_bidegree(4, "uniqueness") == Bidegree.motivic(6, -4)
    with pytest.raises(ValueError):
        ainfty_obstruction_bidegree(2)


@pytest.mark.parametrize("kind", list(Kind))
def test_audit_and_certificate_agree(kind):
    report = audit(kind, 64)
    certs = symbolic_audit(kind)
    assert report.all_zero
    assert all(c.ok for c in certs) == report.all_zero
    # rule logged per entry
    assert {e.verdict.rule for e in report.entries} <= {Rule.NONPOSITIVE_FILTRATION}


def test_einf_region_description():
    for e in audit(Kind.EINF_EXIST, 40).entries:
        s, w = e.bidegree.as_tuple()
        assert s >= 1 and w == -e.i and w >= 1 - s


def test_kind_parse():
    assert Kind.parse("moore-einf") is Kind.MOORE_EINF
    assert Kind.parse("ainf-unique") is Kind.AINF_UNIQUE
    with pytest.raises(ValueError):
        Kind.parse("bogus")


def test_forced():
    z2 = FiniteAbelianGroup.cyclic(2)
    assert forced_les_group(None, None).value.is_zero()
    r = forced_les_group(z2, FiniteAbelianGroup.zero())
    assert r.status is ForcedStatus.FORCED and r.value == z2
    amb = forced_les_group(z2, z2)
    assert amb.status is ForcedStatus.EXTENSION_AMBIGUOUS
    assert set(amb.candidates) == {FiniteAbelianGroup.cyclic(4), FiniteAbelianGroup(0, (2, 2))}
    assert forced_les_group(FiniteAbelianGroup(1), z2).status is ForcedStatus.UNKNOWN


@given(st.lists(st.sampled_from([2, 4, 8]), max_size=3), st.lists(st.sampled_from([2, 4]), max_size=2))
def test_extension_orders(a, b):
    A, B = FiniteAbelianGroup(0, tuple(a)), FiniteAbelianGroup(0, tuple(b))
    r = forced_les_group(A, B)
    options = [r.value] if r.status is ForcedStatus.FORCED else list(r.candidates)
    for g in options:
        assert g.order() == A.order() * B.order()
    if r.status is ForcedStatus.EXTENSION_AMBIGUOUS:
        assert A + B in options
