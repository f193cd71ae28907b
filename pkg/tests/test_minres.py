import pytest
from hypothesis import given, strategies as st

from ctau.chart import Tag
from ctau.minres import (
    CertificateError,
    base_name,
    ext_chart,
    h0_towers,
    les_rank_check,
    propagate_hidden_extensions,
    resolve,
    resolve_hidden_extension,
    tau_les_assemble,
    tilde_name,
    times,
)
from ctau.pipeline import a1_massey


@pytest.fixture(scope="module")
def kq_res():
    return resolve(stem_max=12, filtration_max=8)


@pytest.fixture(scope="module")
def kq(kq_res):
    return ext_chart(kq_res)


@pytest.fixture(scope="module")
def assembled(kq):
    return tau_les_assemble(kq)


def test_resolution_invariants(kq_res):
    kq_res.check_minimality()
    kq_res.check_exactness()
    kq_res.euler_characteristic_check()


def test_mod_tau_resolution_invariants():
    res = resolve(stem_max=10, filtration_max=6, mod_tau=True)
    res.check_minimality()
    res.check_exactness()
    res.euler_characteristic_check()


def test_low_generators(kq_res):
    assert kq_res.rank(0, 0) == 1
    assert kq_res.rank(1, 1) == 1 and kq_res.rank(1, 2) == 1
    assert kq_res.rank(2, 3) == 0  # h0 h1 = 0


def test_kq_chart_entries(kq):
    free = {e.coords() for e in kq.entries if e.tag == Tag.TAU_FREE}
    torsion = {e.coords() for e in kq.entries if e.tag == Tag.TAU_TORSION}
    assert {(0, f, 0) for f in range(9)} <= free
    assert {(1, 1, 1), (2, 2, 2), (4, 3, 2), (8, 4, 4), (9, 5, 5), (10, 6, 6), (12, 7, 6)} <= free
    assert torsion == {(k, k, k) for k in range(3, 9)} | {(11, 7, 7), (12, 8, 8)}
    assert all(e.order == 1 for e in kq.entries if e.tag == Tag.TAU_TORSION)


def test_kq_names(kq):
    assert kq.named("a").coords() == (4, 3, 2)
    assert kq.named("b").coords() == (8, 4, 4)
    assert kq.named("h1^3 b").coords() == (11, 7, 7)


def test_kq_towers(kq):
    bases = {c[0].coords(): len(c) for c in h0_towers(kq) if len(c) > 1}
    assert bases == {(0, 0, 0): 9, (4, 3, 2): 6, (8, 4, 4): 5, (12, 7, 6): 2}


def test_h1_edges_untwisted(kq):
    h1 = {(kq.entry(e.source).coords(), kq.entry(e.target).coords()) for e in kq.edges if e.label == "h1"}
    assert ((8, 4, 4), (9, 5, 5)) in h1 and ((10, 6, 6), (11, 7, 7)) in h1
    assert all(e.tau_power == 0 for e in kq.edges if e.label == "h1")


def test_les_assembly(kq, assembled):
    assert les_rank_check(kq, assembled)
    assert assembled.named("tilde(h1^3)").coords() == (4, 2, 2)
    # classes pushed past the stem bound are dropped
    assert max(e.stem for e in assembled.entries) == 12
    assert sorted(assembled.metadata["flags"]) == [["t:11,7,7#0", "c:12,7,6#0"], ["t:3,3,3#0", "c:4,3,2#0"]]


def test_hidden_extension_resolution(assembled):
    cert = a1_massey("tau", "h1^3", "h0")
    lower, upper = assembled.named("tilde(h1^3)"), assembled.named("a")
    doc = resolve_hidden_extension(assembled, [lower.key, upper.key], cert, "bracket")
    hidden = [e for e in doc.edges if e.label == "hidden-h0"]
    assert [(e.source, e.target) for e in hidden] == [(lower.key, upper.key)]
    doc = propagate_hidden_extensions(doc, "b")
    assert doc.metadata["flags"] == []
    assert len([e for e in doc.edges if e.label == "hidden-h0"]) == 2


def test_hidden_extension_rejects_bad_certificates(assembled):
    lower, upper = assembled.named("tilde(h1^3)"), assembled.named("a")
    wrong_degree = a1_massey("h0", "h1", "h0")
    with pytest.raises(CertificateError):
        resolve_hidden_extension(assembled, [lower.key, upper.key], wrong_degree)
    with pytest.raises(CertificateError):
        resolve_hidden_extension(assembled, [upper.key, lower.key], a1_massey("tau", "h1^3", "h0"))


def test_mod_tau_chart_matches_assembly(assembled):
    direct = ext_chart(resolve(stem_max=12, filtration_max=8, mod_tau=True))
    below = lambda doc: sorted(e.coords() for e in doc.entries if e.filtration < 8)
    assert below(direct) == below(assembled)
    h0 = {(direct.entry(e.source).coords(), direct.entry(e.target).coords()) for e in direct.edges if e.label == "h0"}
    assert ((4, 2, 2), (4, 3, 2)) in h0


def test_base_names():
    assert base_name(0, 0, 0) == "1"
    assert base_name(4, 3, 2) == "a"
    assert base_name(8, 4, 4) == "b"
    assert base_name(4, 2, 2, ctau=True) == "tilde(h1^3)"
    assert base_name(4, 2, 2) is None


@given(st.integers(0, 6), st.booleans())
def test_tilde_absorbs_three_h1(k, with_b):
    name = "b" if with_b else "1"
    for _ in range(k + 3):
        name = times(name, "h1")
    prefix = "" if k == 0 else ("h1 " if k == 1 else f"h1^{k} ")
    assert tilde_name(name) == prefix + "tilde(h1^3)" + (" b" if with_b else "")
