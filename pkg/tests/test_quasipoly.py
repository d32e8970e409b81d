"""Quasi-polynomial ring operations and the fitting protocol."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_tails.quasipoly import (FitError, QuasiPolynomial,
                                   fit_quasi_polynomial, fit_window_start)


def qp_from(fn, period, degree):
    # build by fitting against an exact generator; keeps tests honest
    samples = [(n, Fraction(fn(n))) for n in range(60)]
    return fit_quasi_polynomial(samples, max_period=period, max_degree=degree)


def test_constant_sequence():
    qp = fit_quasi_polynomial([(n, Fraction(7)) for n in range(10)])
    assert qp.period == 1 and qp.degree == 0
    assert qp(123) == 7


def test_linear_fit():
    qp = fit_quasi_polynomial([(n, Fraction(3 * n + 2)) for n in range(12)])
    assert qp.degree == 1 and qp.period == 1
    assert qp(100) == 302


def test_quadratic_with_period_two():
    def f(n):
        return n * n + (1 if n % 2 else -4)
    qp = fit_quasi_polynomial([(n, Fraction(f(n))) for n in range(40)])
    assert qp.period == 2 and qp.degree == 2
    for n in (81, 82):
        assert qp(n) == f(n)


def test_alternating_signs():
    qp = fit_quasi_polynomial([(n, Fraction((-1) ** n * 5)) for n in range(20)])
    assert qp.period == 2 and qp.degree == 0


def test_minimal_period_preferred():
    # period-2 data that is secretly period 1
    qp = fit_quasi_polynomial([(n, Fraction(n)) for n in range(0, 30, 2)])
    assert qp.period == 1 and qp.degree == 1


def test_eventually_quasipolynomial_rejected_by_holdout():
    # the jump sits inside the 2P holdout window, so every candidate fails
    vals = [(n, Fraction(99)) for n in range(10)] + \
        [(n, Fraction(5)) for n in range(10, 12)]
    with pytest.raises(FitError):
        fit_quasi_polynomial(vals, max_period=1)


def test_not_quasipolynomial_raises():
    vals = [(n, Fraction(2 ** n)) for n in range(30)]
    with pytest.raises(FitError):
        fit_quasi_polynomial(vals)


def test_validate_all_mode():
    vals = [(n, Fraction(n % 3)) for n in range(20)]
    qp = fit_quasi_polynomial(vals, validate_all=True)
    assert qp.period == 3 and qp.degree == 0
    # a corruption early in the sample must fail every candidate whose
    # period cannot absorb it into its own training class
    bad = vals[:2] + [(2, Fraction(17))] + vals[3:]
    with pytest.raises(FitError):
        fit_quasi_polynomial(bad, validate_all=True, max_period=3)


def test_restricted_residue_classes():
    # samples only on n = 1 mod 4: unsampled residues raise on evaluation
    qp = fit_quasi_polynomial([(n, Fraction(2 * n + 1))
                               for n in range(1, 60, 4)])
    assert qp(41) == 83
    assert qp.period == 1


def test_ring_operations():
    a = QuasiPolynomial.linear(1, 2)
    b = QuasiPolynomial.constant(3)
    assert (a + b)(10) == 24
    assert (a * b)(4) == 27
    assert (a - a).is_zero
    assert a.scale(-2)(5) == -22


def test_period_alignment():
    two = QuasiPolynomial(2, 0, ((0, (Fraction(1),)), (1, (Fraction(-1),))))
    three = QuasiPolynomial(3, 0, ((0, (Fraction(0),)), (1, (Fraction(1),)),
                                   (2, (Fraction(2),))))
    s = two + three
    assert s.period == 6
    for n in range(12):
        assert s(n) == two(n) + three(n)


def test_canonical_reduces_period():
    fat = QuasiPolynomial(4, 0, tuple((r, (Fraction(5),)) for r in range(4)))
    slim = fat.canonical()
    assert slim.period == 1 and slim.degree == 0


def test_equal_on_class():
    alternating = QuasiPolynomial(2, 0, ((0, (Fraction(1),)),
                                         (1, (Fraction(-1),))))
    const = QuasiPolynomial.constant(1)
    assert alternating.equal_on_class(const, n0=0, modulus=2)
    assert not alternating.equal_on_class(const, n0=1, modulus=2)
    assert not alternating.equal_on_class(const, n0=0, modulus=1)


def test_fit_window_start():
    qp = QuasiPolynomial.constant(4)
    samples = [(n, Fraction(4 if n >= 5 else 0)) for n in range(12)]
    assert fit_window_start(qp, samples) == 5


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.lists(st.integers(-5, 5), min_size=1, max_size=3))
def test_fit_recovers_polynomials(period, coeffs):
    def f(n):
        shift = n % period
        return sum(c * n ** j for j, c in enumerate(coeffs)) + shift
    samples = [(n, Fraction(f(n))) for n in range(70)]
    qp = fit_quasi_polynomial(samples, max_period=8)
    for n in range(70, 90):
        assert qp(n) == f(n)
