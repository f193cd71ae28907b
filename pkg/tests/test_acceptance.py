"""The eleven acceptance criteria, each with its time budget.

Every criterion prints one line ``[PASS|FAIL] <n> <title> (<seconds>s)`` to
the terminal, also when pytest captures output.  Run on its own with
``python3 -m pytest tests/test_acceptance.py -v`` or
``python3 tests/test_acceptance.py``.
"""

import json
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from ctau.bidegree import (
    Rule,
    anss_bockstein_correspondence,
    anss_to_bockstein,
    bockstein_to_anss,
    ct_pi_region_zero,
    motivic_to_novikov,
    novikov_region_rule,
)
from ctau.bp import Layout, build_algebroid, p_is_integral, right_unit, verify_algebroid_axioms
from ctau.chart import Tag
from ctau.cli import main as cli_main
from ctau.cobar import BPCobar, ExtClass
from ctau.linalg import FiniteAbelianGroup
from ctau.minres import ext_chart, h0_towers, resolve
from ctau.obstruction import Kind, audit, symbolic_audit
from ctau.pipeline import cross_validate_a1, kq_ct_pipeline, moore_forced_group
from ctau.steenrod import build_slice, verify_hopf_axioms
from ctau.structures import (
    F2,
    Z2HAT,
    GradedRingPresentation,
    TauTorsionError,
    build_endomorphism,
    build_smash_square,
    check_table_coherence,
    homology_kq,
    pi_kgl,
    pi_kgl_ctau,
    pi_kq,
    pi_kq_ctau,
    tau_free_homotopy_quotient,
)


@contextmanager
def criterion(capsys, number: int, title: str, budget: float):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\n[{status}] {number:>2} {title} ({elapsed:.2f}s, budget {budget:g}s)")


# -- 1 ---------------------------------------------------------------------------------


def verbatim_pi_rule(s, w):
    # w > s, or 2w <= s, or s < 0, except the class at the origin
    return (s, w) != (0, 0) and (w > s or 2 * w <= s or s < 0)


def test_01_vanishing_region(capsys):
    with criterion(capsys, 1, "vanishing-region fidelity on [-20,20]^2", 1):
        for s in range(-20, 21):
            for w in range(-20, 21):
                v = ct_pi_region_zero(s, w)
                assert v.is_provably_zero == verbatim_pi_rule(s, w), (s, w)
                f, t = motivic_to_novikov(s, w)
                assert v.rule == (novikov_region_rule(f, t) or Rule.NOT_COVERED), (s, w)
        assert ct_pi_region_zero(0, 0).rule is Rule.EXCEPTION


# -- 2 ---------------------------------------------------------------------------------


def test_02_obstruction_audits(capsys):
    with criterion(capsys, 2, "obstruction audits, six kinds, nmax 64, with certificates", 1):
        for kind in Kind:
            assert audit(kind, 64).all_zero, kind
            certs = symbolic_audit(kind)
            assert certs and all(c.ok for c in certs), kind


# -- 3 ---------------------------------------------------------------------------------


def oracle_ext_1():
    """Ext^{1,2} and Ext^{1,4} from hand-written cobar matrices.

    t = 2: C^0 = Z{v1}, C^1 = Z{t1}, C^2 = 0; d(v1) = eta_R(v1) - v1 = 2 t1.
    t = 4: C^0 = Z{v1^2}, C^1 = Z{v1 t1, t1^2}, C^2 = Z{t1|t1};
    d(v1^2) = 4 v1 t1 + 4 t1^2, d(v1 t1) = 2 t1|t1, d(t1^2) = -2 t1|t1.
    """
    from math import gcd

    out = {}
    # t = 2: kernel of d1 is all of Z, image 2Z
    out[2] = FiniteAbelianGroup(0, (2,))
    # t = 4: kernel of the row (2, -2) is spanned by k = (1, 1); image (4, 4) = 4 k
    row = (2, -2)
    g = gcd(*row)
    k = (-row[1] // g, row[0] // g)
    image = (4, 4)
    assert row[0] * image[0] + row[1] * image[1] == 0
    mult = image[0] // k[0]
    assert (mult * k[0], mult * k[1]) == image
    out[4] = FiniteAbelianGroup(0, (abs(mult),))
    return out


def test_03_bp_ext_desk_range(capsys):
    with criterion(capsys, 3, "BP Ext desk range k=2, t_max=12, f_max=3", 60):
        C = BPCobar(build_algebroid(2, 12), s_max=4, t_max=12)
        assert C.ext_group(0, 0) == FiniteAbelianGroup(1, ())
        for f in range(0, 4):
            for t in range(0, 13, 2):
                g = C.ext_group(f, t)
                if f <= 0 and t > 0:
                    assert g.is_zero(), (f, t)
                if f > t - f:
                    assert g.is_zero(), (f, t)
        oracle = oracle_ext_1()
        assert C.ext_group(1, 2) == oracle[2] == FiniteAbelianGroup(0, (2,))
        assert C.ext_group(1, 4) == oracle[4] == FiniteAbelianGroup(0, (4,))


# -- 4 ---------------------------------------------------------------------------------


def test_04_figure3(capsys):
    with criterion(capsys, 4, "Figure 3 reproduction through stem 12, filtration 8", 60):
        doc = ext_chart(resolve(stem_max=12, filtration_max=8))
        free = {(e.stem, e.filtration) for e in doc.entries if e.tag == Tag.TAU_FREE}
        torsion = {(e.stem, e.filtration) for e in doc.entries if e.tag == Tag.TAU_TORSION}
        bases = {c[0].coords()[:2]: [x.coords()[:2] for x in c] for c in h0_towers(doc)}
        # tau-free h0 towers reaching the top filtration
        assert bases[(0, 0)][-1] == (0, 8)
        assert (4, 4) in bases[(4, 3)] and bases[(4, 3)][-1] == (4, 8)
        assert bases[(8, 4)][-1] == (8, 8)
        assert all(p in free for p in bases[(0, 0)] + bases[(4, 3)] + bases[(8, 4)])
        # tau-free h1 line and the tau-torsion continuation of the eta tower
        assert {(1, 1), (2, 2)} <= free
        assert {(3, 3), (4, 4), (5, 5)} <= torsion
        # the h1 line off b: (9,5), (10,6) drawn as dots, tau-torsion from (11,7) on
        assert {(9, 5), (10, 6)} <= free
        assert (11, 7) in torsion
        b_line = {(doc.entry(e.source).coords()[:2], doc.entry(e.target).coords()[:2]) for e in doc.edges if e.label == "h1"}
        assert {((8, 4), (9, 5)), ((9, 5), (10, 6)), ((10, 6), (11, 7))} <= b_line
        assert doc.named("a").coords() == (4, 3, 2)
        assert doc.named("b").coords() == (8, 4, 4)


# -- 5 ---------------------------------------------------------------------------------


def test_05_figure4_hidden_extension(capsys):
    with criterion(capsys, 5, "Figure 4, <tau, h1^3, h0> = {a}, resolved presentation", 120):
        r = kq_ct_pipeline(12, 8)
        assert r.ok, r.checks
        assert r.resolved.named("tilde(h1^3)").coords() == (4, 2, 2)
        cert = r.certificate
        assert cert.representative.tridegree() == (3, 7, 2)
        assert not cert.is_zero() and not cert.has_indeterminacy
        basis = cert.complex.ext_slice_basis(3, 7, 2)
        assert len(basis) == 1 and cert.contains(ExtClass(3, 7, 2, basis[0]))
        assert r.presentation.same_as(pi_kq_ctau())
        assert r.presentation.describe() == "Z2hat[eta, v1^2] / (2*eta = 0)"
        assert any(d.startswith("2*tilde(h1^3) = a") for d in r.derived_relations)
        assert any(d.startswith("tilde(h1^3)^2 = b") for d in r.derived_relations)
        assert r.checks["presentation_matches_chart"] and r.checks["square_relation"]
        hidden = [e for e in r.resolved.edges if e.label == "hidden-h0"]
        assert any(r.resolved.entry(e.source).coords() == (4, 2, 2) and r.resolved.entry(e.target).coords() == (4, 3, 2) for e in hidden)
        # the command-line entry point runs the same pipeline
        assert cli_main(["kq-ct", "--json", "--no-cache"]) == 0
        capsys.readouterr()


# -- 6 ---------------------------------------------------------------------------------


def test_06_moore_forced_group(capsys):
    with criterion(capsys, 6, "Moore-spectrum forced group is Z/2", 60):
        m = moore_forced_group(BPCobar(build_algebroid(2, 12), s_max=2, t_max=12))
        assert m.result.status.value == "Forced"
        assert m.result.value == FiniteAbelianGroup(0, (2,))


# -- 7 ---------------------------------------------------------------------------------

ONE = ((), 0, 0)
TAU0 = ((), 1, 0)
TAU1 = ((), 2, 0)
XI1 = ((1,), 0, 0)


def test_07_hopf_suites(capsys):
    with criterion(capsys, 7, "Hopf suites through degree 32, A(1) pair, seeded faults", 30):
        for variant in ("DualA_full", "DualA_modTau", "DualA_modTau_betaTau"):
            r = verify_hopf_axioms(build_slice(variant, 32))
            assert r.ok, (variant, r.first_failure)
        for variant in ("A1_dual", "A1_dual_modTau"):
            assert verify_hopf_axioms(build_slice(variant, 6)).ok
        primitive = {"tau1": {(0, TAU1, ONE), (0, ONE, TAU1)}}
        for variant in ("DualA_full", "DualA_modTau", "DualA_modTau_betaTau"):
            assert not verify_hopf_axioms(build_slice(variant, 12, primitive)).ok, variant
        # in A(1)_* a primitive tau1 is still a Hopf algebra, so seed counit and degree faults there
        counit = {"tau1": {(0, TAU1, ONE), (0, XI1, TAU0)}}
        degree = {"tau1": {(0, TAU1, ONE), (0, ONE, TAU1), (0, XI1, TAU0), (0, TAU0, TAU0)}}
        for variant in ("A1_dual", "A1_dual_modTau"):
            for fault in (counit, degree):
                assert not verify_hopf_axioms(build_slice(variant, 6, fault)).ok, variant


# -- 8 ---------------------------------------------------------------------------------


def _pmul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _padd(*ps):
    out = {}
    for p in ps:
        for e, c in p.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _pscale(p, c):
    return {e: c * x for e, x in p.items()}


def oracle_right_units():
    """eta_R(v1), eta_R(v2) from eta_R(m_n) = sum m_i t_{n-i}^(2^i), variables (v1, v2, t1, t2)."""
    v1, v2, t1, t2 = ({tuple(int(i == j) for j in range(4)): Fraction(1)} for i in range(4))
    m1 = _pscale(v1, Fraction(1, 2))
    eta_m1 = _padd(m1, t1)
    eta_v1 = _pscale(eta_m1, 2)
    # 2 m2 = v2 + m1 v1^2, so m2 = v2/2 + v1^3/4
    eta_m2 = _padd(_pscale(v2, Fraction(1, 2)), _pscale(_pmul(v1, _pmul(v1, v1)), Fraction(1, 4)), _pmul(m1, _pmul(t1, t1)), t2)
    eta_v2 = _padd(_pscale(eta_m2, 2), _pscale(_pmul(eta_m1, _pmul(eta_v1, eta_v1)), -1))
    return eta_v1, eta_v2


def test_08_algebroid(capsys):
    with criterion(capsys, 8, "algebroid axioms k=2, t_max=12, right unit oracle", 10):
        r = verify_algebroid_axioms(build_algebroid(2, 12), 2, 12)
        assert r.ok, r.failures
        want1, want2 = oracle_right_units()
        assert all(c.denominator == 1 for c in list(want1.values()) + list(want2.values()))
        L = Layout(2, 1)
        for n, want in ((1, want1), (2, want2)):
            got = right_unit(n)
            assert p_is_integral(got)
            # engine layout: v1, v2, t1, t2 in that order
            assert {e: Fraction(c) for e, c in got.items()} == want, n
        assert want1 == {(1, 0, 0, 0): 1, (0, 0, 1, 0): 2}


# -- 9 ---------------------------------------------------------------------------------


def test_09_engine_cross_validation(capsys):
    with criterion(capsys, 9, "cobar vs minres ranks over A(1)/tau, stem <= 10, filtration <= 8", 120):
        assert cross_validate_a1(10, 8) == []


# -- 10 --------------------------------------------------------------------------------


def test_10_ring_presentations(capsys):
    with criterion(capsys, 10, "SmashSquare/Endomorphism tables, tau quotients", 5):
        exterior = GradedRingPresentation.parse(F2, [("h", (1, 1))], ["h^2 = 0"])
        trunc = GradedRingPresentation.parse(F2, [("x", (1, -1))], ["x^4 = 0"])
        z4 = GradedRingPresentation.parse(Z2HAT, [("x", (1, -1))], ["x^2 = 0", "4 = 0"])
        ddx = lambda m: {(m[0] - 1,): 1} if m[0] % 2 else {}
        point = lambda m: {(0,): 1} if m == (1,) else {}
        for R in (exterior, trunc, z4):
            rep = check_table_coherence(build_smash_square(R, (0, 4)))
            assert rep.ok and rep.checks["commutative"] and rep.checks["beta_squared_zero"]
        for R, D in ((trunc, ddx), (z4, point)):
            rep = check_table_coherence(build_endomorphism(R, D, (0, 4)))
            assert rep.ok and rep.checks["commutator_identity"] and rep.checks["beta_squared_zero"]
        assert tau_free_homotopy_quotient(pi_kgl()).same_as(pi_kgl_ctau())
        hq = tau_free_homotopy_quotient(homology_kq(30), 30)
        assert hq.describe() == "F2[xi1^2, xi2, xi3, xi4, tau2, tau3] / (tau2^2 = 0, tau3^2 = 0)"
        with pytest.raises(TauTorsionError):
            tau_free_homotopy_quotient(pi_kq())


# -- 11 --------------------------------------------------------------------------------


def test_11_bockstein_correspondence(capsys):
    with criterion(capsys, 11, "Bockstein correspondence r = 1..50", 1):
        assert anss_bockstein_correspondence(1).as_tuple() == (3, 1, 4, 2)
        for r in range(1, 51):
            c = anss_bockstein_correspondence(r)
            assert c.as_tuple() == (2 * r + 1, r, 2 * r + 2, r + 1)
            assert anss_to_bockstein(bockstein_to_anss(r)) == r


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
