"""Truncated-series arithmetic, special series, and their exactness rules."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_tails.qseries import (SeriesDivisionError, SeriesError,
                                 ThetaParams, TruncatedSeries, euler_phi,
                                 exact_div, geometric_inverse, pochhammer,
                                 theta)


def S(terms, order=None):
    return TruncatedSeries.from_exponents(terms, order=order)


def test_add_cancellation():
    assert (S({0: 1, 1: -1}) + S({1: 1})).as_dict() == {0: 1}


def test_add_identity():
    f = S({0: 1, 3: 2})
    assert (f + TruncatedSeries.zero()) == f


def test_add_merges():
    got = S({0: 1, 3: 1}) + S({1: 1, 3: 1})
    assert got == S({0: 1, 1: 1, 3: 2})


def test_add_order_is_min():
    got = S({0: 1}, order=5) + S({1: 1}, order=9)
    assert got.order_exponent() == 5


def test_mul_geometric_inverse_is_one():
    f = S({0: 1, 1: -1})
    assert (f * geometric_inverse(1, 12)).as_dict() == {0: 1}


def test_mul_identity():
    f = S({-2: 3, 5: 1})
    assert f * TruncatedSeries.one() == f


def test_mul_binomials():
    got = S({0: 1, 1: -1}) * S({0: 1, 2: -1})
    assert got == S({0: 1, 1: -1, 2: -1, 3: 1})


def test_mul_order_propagation():
    # product exact below min(delta*(f)+order(g), delta*(g)+order(f))
    f = S({2: 1}, order=10)
    g = S({3: 1}, order=11)
    assert (f * g).order_exponent() == min(2 + 11, 3 + 10)


def test_min_degree_additive():
    f = S({Fraction(1, 2): 2, 3: 1})
    g = S({2: -1, 4: 5})
    assert (f * g).min_degree() == f.min_degree() + g.min_degree()


def test_geometric_inverse_examples():
    assert geometric_inverse(1, 4).as_dict() == {0: 1, 1: 1, 2: 1, 3: 1}
    assert geometric_inverse(2, 5).as_dict() == {0: 1, 2: 1, 4: 1}
    f = S({0: 1, 3: -1})
    assert (f * geometric_inverse(3, 20)).as_dict() == {0: 1}
    with pytest.raises(SeriesError):
        geometric_inverse(0, 5)
    with pytest.raises(SeriesError):
        geometric_inverse(-1, 5)


def test_exact_div_examples():
    assert exact_div(S({0: 1, 2: -1}), 1).as_dict() == {0: 1, 1: 1}
    assert exact_div(TruncatedSeries.zero(), 1).is_zero
    with pytest.raises(SeriesDivisionError):
        exact_div(S({0: 1, 2: -1, 3: 1}), 1)


def test_exact_div_roundtrip_laurent():
    f = S({-3: 2, 0: -2, 4: 1, 5: -1})
    prod = f * S({0: 1, 2: -1})
    assert exact_div(prod, 2) == f


def test_theta_pentagonal():
    th = theta(ThetaParams(Fraction(3), Fraction(1, 2)), 30)
    assert th.agrees_with(euler_phi(30), 30)
    prefix = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1, 22: 1, 26: 1}
    assert th.as_dict() == prefix


def test_theta_identities():
    b, c = Fraction(5), Fraction(7, 2)
    assert theta(ThetaParams(b, -c), 50).agrees_with(
        theta(ThetaParams(b, c), 50), 50)
    b, c = Fraction(3), Fraction(1, 2)
    lhs = theta(ThetaParams(b, c), 60)
    rhs = theta(ThetaParams(b, b + c), 60).shifted(b / 2 + c).scaled(-1)
    assert lhs.agrees_with(rhs, 50)


def test_theta_rejects_non_integral():
    with pytest.raises(SeriesError):
        ThetaParams(Fraction(3), Fraction(1, 3))
    with pytest.raises(SeriesError):
        ThetaParams(Fraction(5, 2), Fraction(1, 2))


def test_pochhammer_euler():
    got = euler_phi(15)
    assert got.as_dict() == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}


def test_pochhammer_empty_product():
    assert pochhammer(20, 10).as_dict() == {0: 1}


def test_pochhammer_divergent():
    with pytest.raises(SeriesError):
        pochhammer(0, 10)
    with pytest.raises(SeriesError):
        pochhammer(1, 10, step=0)


def test_coefficient_beyond_order_raises():
    f = S({0: 1}, order=5)
    assert f.coefficient(3) == 0
    with pytest.raises(SeriesError):
        f.coefficient(5)
    with pytest.raises(SeriesError):
        f.coefficient(7)


def test_json_roundtrip():
    f = S({Fraction(-1, 2): 3, 2: -7}, order=9)
    obj = f.to_json_obj()
    assert obj["terms"] == [[-1, "3"], [4, "-7"]]
    assert TruncatedSeries.from_json_obj(obj) == f


small_polys = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9),
                              max_size=6)


@settings(max_examples=150, deadline=None)
@given(small_polys, small_polys)
def test_mul_commutes(d1, d2):
    f, g = S(d1), S(d2)
    assert f * g == g * f


@settings(max_examples=150, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_mul_distributes(d1, d2, d3):
    f, g, h = S(d1), S(d2), S(d3)
    assert f * (g + h) == f * g + f * h


@settings(max_examples=100, deadline=None)
@given(small_polys, st.integers(1, 4))
def test_exact_div_inverts_mul(d, e):
    f = S(d)
    prod = f * S({0: 1, e: -1})
    assert exact_div(prod, e) == f


@settings(max_examples=100, deadline=None)
@given(small_polys, st.integers(1, 5))
def test_truncation_consistency(d, order):
    # multiplying then truncating equals truncating inputs then multiplying,
    # below the propagated order
    f = S(d)
    g = S({0: 1, 1: 1, 2: 1})
    full = (f * g).truncated(order)
    trunc = f.truncated(order) * g.truncated(order)
    bound = trunc.order_exponent()
    if bound is not None and bound > 0 and full.order_exponent() is not None:
        assert full.agrees_with(trunc, min(order, bound))
