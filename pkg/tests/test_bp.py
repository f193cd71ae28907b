from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ctau.bp import (
    Layout,
    build_algebroid,
    gen_degree,
    log_coefficients,
    p_add,
    p_is_integral,
    p_mul,
    p_str,
    right_unit,
    verify_algebroid_axioms,
)


def test_generator_degrees():
    assert [gen_degree(n) for n in (1, 2, 3)] == [2, 6, 14]


def test_log_coefficients():
    m = log_coefficients(2)
    assert m[1] == {(1, 0): Fraction(1, 2)}
    assert m[2] == {(0, 1): Fraction(1, 2), (3, 0): Fraction(1, 4)}


def test_right_unit_v1():
    eta = right_unit(1)
    assert p_is_integral(eta)
    assert p_str(eta, Layout(2, 1)) == "v1 + 2 t1"


def test_right_unit_v2_integral():
    eta = right_unit(2)
    assert p_is_integral(eta)
    assert p_str(eta, Layout(2, 1)) == "-3 v1^2 t1 - 5 v1 t1^2 + v2 - 4 t1^3 + 2 t2"


@pytest.mark.parametrize("k,t_max", [(1, 8), (2, 12)])
def test_axioms_hold(k, t_max):
    r = verify_algebroid_axioms(build_algebroid(k, t_max), k, t_max)
    assert r.ok, r.failures
    assert r.checks > 0


def test_seeded_right_unit_fault():
    alg = build_algebroid(2, 12)
    eta = dict(alg.eta_r[0])
    key = next(e for e in eta if any(e[2:]))
    eta[key] += 2
    r = verify_algebroid_axioms(build_algebroid(2, 12, {1: eta}), 2, 12)
    assert not r.ok


def test_bounds():
    with pytest.raises(ValueError):
        build_algebroid(2, 4)
    with pytest.raises(ValueError):
        build_algebroid(0, 12)
    alg = build_algebroid(2, 12)
    assert alg.certified(12) and not alg.certified(14)


def test_moved_coefficient_position_one_is_variable():
    alg = build_algebroid(2, 12)
    L = Layout(2, 2)
    assert p_str(alg.moved_coefficient(1, 1, L), L) == "v1"


small = st.dictionaries(
    st.tuples(*[st.integers(0, 2)] * 4), st.integers(-3, 3).filter(bool), max_size=4
)


@given(small, small, small)
def test_polynomial_ring_laws(a, b, c):
    assert p_mul(a, b) == p_mul(b, a)
    assert p_mul(p_mul(a, b), c) == p_mul(a, p_mul(b, c))
    assert p_mul(a, p_add(b, c)) == p_add(p_mul(a, b), p_mul(a, c))
