import pytest
from hypothesis import given, strategies as st

from ctau.linalg import FiniteAbelianGroup
from ctau.structures import (
    F2,
    Z2HAT,
    ExtensionVariant,
    GradedRingPresentation,
    PresentationError,
    TauGradedModule,
    TauTorsionError,
    build_endomorphism,
    build_smash_square,
    check_table_coherence,
    cofiber_of_tau_cohomology,
    hct_cohomology,
    homology_kq,
    homology_sphere,
    pi_kgl,
    pi_kgl_ctau,
    pi_kq,
    pi_kq_ctau,
    round_trip_ranks_agree,
    tau_free_cohomology_quotient,
    tau_free_homotopy_quotient,
    tau_torsion_witness,
)

Z = FiniteAbelianGroup(1, ())
Z2 = FiniteAbelianGroup(0, (2,))


def truncated_poly(n):
    return GradedRingPresentation.parse(F2, [("x", (1, -1))], [f"x^{n} = 0"])


def derivation(m):
    n = m[0]
    return {(n - 1,): 1} if n % 2 else {}


def test_pi_kq_groups():
    kq = pi_kq()
    assert kq.group(0, 0) == Z
    assert kq.group(1, 1) == Z2
    assert kq.group(4, 2) == Z
    assert kq.group(3, 3) == Z2
    assert kq.group(4, 3).is_zero()
    assert kq.normal_form(kq.mul(kq.gen("a"), kq.gen("a"))) == {kq.mono("b"): 4}
    assert kq.normal_form(kq.mul(kq.gen("a"), kq.gen("eta"))) == {}


def test_pi_kq_ctau_groups():
    P = pi_kq_ctau()
    assert P.describe() == "Z2hat[eta, v1^2] / (2*eta = 0)"
    assert [P.group(s, s // 2) for s in (0, 4, 8)] == [Z, Z, Z]
    assert P.group(1, 1) == Z2 and P.group(5, 5) == Z2


def test_json_round_trip():
    kq = pi_kq()
    assert GradedRingPresentation.from_json(kq.to_json()).same_as(kq)


def test_parse_errors():
    with pytest.raises(PresentationError):
        GradedRingPresentation.parse(F2, [("x", (1, 1))], ["y^2 = 0"])


def test_kgl_quotient():
    q = tau_free_homotopy_quotient(pi_kgl())
    assert q.same_as(pi_kgl_ctau())
    assert round_trip_ranks_agree(pi_kgl(), 12)


def test_kq_rejected():
    assert pi_kq().format_mono(tau_torsion_witness(pi_kq(), 12)) == "eta^3"
    with pytest.raises(TauTorsionError, match="tau_les_assemble"):
        tau_free_homotopy_quotient(pi_kq())


def test_homology_kq_quotient():
    q = tau_free_homotopy_quotient(homology_kq(30), 30)
    assert q.describe() == "F2[xi1^2, xi2, xi3, xi4, tau2, tau3] / (tau2^2 = 0, tau3^2 = 0)"
    assert round_trip_ranks_agree(homology_kq(30), 20)


def test_cohomology_quotient():
    c = tau_free_cohomology_quotient(homology_sphere())
    assert c.rank(1, -1) == 1 and c.rank(0, 0) == 0
    with pytest.raises(TauTorsionError):
        tau_free_cohomology_quotient(pi_kq())


def test_hct_cohomology():
    assert hct_cohomology(TauGradedModule(free=((0, 0),))) == [(0, 0)]
    ctau = TauGradedModule(torsion=(((1, -1), 1),))
    assert cofiber_of_tau_cohomology(ctau) == [(1, -1), (2, -2)]
    assert hct_cohomology(ctau) == [(0, 0), (1, -1)]


def test_smash_square_coherent():
    R = GradedRingPresentation.parse(F2, [("h", (1, 1))], ["h^2 = 0"])
    r = check_table_coherence(build_smash_square(R))
    assert r.ok and r.checks["commutative"]


def test_endomorphism_derivation_coherent():
    ext = build_endomorphism(truncated_poly(4), derivation, (0, 4))
    assert ext.variant == ExtensionVariant.ENDOMORPHISM
    r = check_table_coherence(ext)
    assert r.ok and all(r.checks.values())


def test_endomorphism_non_derivation_reports_defect():
    D = lambda m: {(0,): 1} if m == (1,) else {}
    r = check_table_coherence(build_endomorphism(truncated_poly(4), D, (0, 4)))
    assert r.ok
    assert not r.checks["associative"]
    assert r.failures[0]["check"] == "associativity"


def test_z4_mock():
    Y = GradedRingPresentation.parse(Z2HAT, [("x", (1, -1))], ["x^2 = 0", "4 = 0"])
    D = lambda m: {(0,): 1} if m == (1,) else {}
    assert check_table_coherence(build_endomorphism(Y, D, (0, 2))).ok
    assert check_table_coherence(build_smash_square(Y, (0, 2))).ok


def test_endomorphism_validation():
    wrong_degree = lambda m: {m: 1}
    with pytest.raises(PresentationError):
        build_endomorphism(truncated_poly(4), wrong_degree, (0, 4))


@given(st.integers(2, 8))
def test_truncated_polynomial_rings_coherent(n):
    R = truncated_poly(n)
    assert check_table_coherence(build_smash_square(R, (0, n))).ok
    assert check_table_coherence(build_endomorphism(R, derivation, (0, n))).checks["commutator_identity"]


@given(st.integers(0, 12), st.integers(-4, 8))
def test_quotient_ranks_of_kgl(s, w):
    # pi(kgl)/tau = Z2hat[v1]: rank one exactly in stems 2n, weight n
    q = tau_free_homotopy_quotient(pi_kgl())
    assert q.rank(s, w) == (1 if s % 2 == 0 and w == s // 2 else 0)
