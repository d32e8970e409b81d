"""Jones-Rosso evaluation: degrees, extremizers, checked sums, A1 smoke."""

from fractions import Fraction

import pytest

from torus_tails.jones import (JonesError, TorusKnot, checked_sum,
                               colored_jones, maximizer_bruteforce,
                               minimizer_bruteforce, minimizer_closed_form,
                               quadratic_forms)
from torus_tails.lie import LieError, get_root_system
from torus_tails.qseries import TruncatedSeries

A1 = get_root_system("A1")
A2 = get_root_system("A2")
B2 = get_root_system("B2")
G2 = get_root_system("G2")


def test_torus_knot_validation():
    with pytest.raises(ValueError):
        TorusKnot(2, 4)
    with pytest.raises(ValueError):
        TorusKnot(3, 2)
    with pytest.raises(ValueError):
        TorusKnot(0, 5)


def test_trivial_color_gives_one():
    for rs in (A1, A2, B2, G2):
        res = colored_jones(rs, TorusKnot(2, 3), (0,) * rs.rank)
        assert res.polynomial.as_dict() == {0: 1}
        assert res.delta_star == 0 == res.delta


def test_trefoil_fundamental_value():
    # direct hand evaluation of the rewritten sum: S = {2*l1, l2} with
    # multiplicities 1 and -1
    res = colored_jones(A2, TorusKnot(2, 3), (1, 0))
    assert res.polynomial.as_dict() == {-6: -1, -4: 1, -2: 1}
    assert res.delta_star == -6 and res.delta == -2


def test_quadratic_form_zero_color():
    f_star, f_max = quadratic_forms(A2, TorusKnot(2, 3), (0, 0))
    assert f_star((0, 0)) == 0
    assert f_max((0, 0)) == 0


def test_degree_formulas_on_rays():
    for rs, knot, lam_ray in ((A2, TorusKnot(2, 3), (1, 0)),
                              (B2, TorusKnot(2, 5), (0, 1)),
                              (G2, TorusKnot(3, 4), (1, 0))):
        for n in range(0, 7):
            lam = tuple(n * c for c in lam_ray)
            res = colored_jones(rs, knot, lam)
            f_star, f_max = quadratic_forms(rs, knot, lam)
            mu = minimizer_closed_form(rs, lam, knot.a)
            assert res.delta_star == f_star(mu), (rs.name, n)
            assert res.delta == f_max(tuple(knot.a * c for c in lam))


def test_trefoil_degree_is_quadratic_in_n():
    # delta* along n*lambda1 equals -(3/2)n^2 - (9/2)n
    for n in range(1, 12):
        res = colored_jones(A2, TorusKnot(2, 3), (n, 0))
        assert res.delta_star == Fraction(-3 * n * n - 9 * n, 2)


def test_top_coefficient_is_unit():
    for rs, knot, lam in ((A2, TorusKnot(2, 3), (2, 1)),
                          (B2, TorusKnot(2, 3), (1, 1)),
                          (A2, TorusKnot(3, 4), (1, 1))):
        res = colored_jones(rs, knot, lam)
        assert abs(res.polynomial.coefficient(res.delta)) == 1


def test_minimizer_closed_form_examples():
    assert minimizer_closed_form(A2, (5, 2), 2) == (0, 3)
    assert minimizer_closed_form(A2, (2, 5), 2) == (3, 0)
    assert minimizer_closed_form(A2, (3, 3), 3) == (0, 0)
    assert minimizer_closed_form(A2, (1, 0), 4) == (1, 0)
    assert minimizer_closed_form(B2, (1, 1), 3) == (1, 1)
    assert minimizer_closed_form(B2, (2, 1), 5) == (0, 1)
    assert minimizer_closed_form(G2, (2, 4), 5) == (0, 0)
    assert minimizer_closed_form(G2, (0, 3), 5) == (0, 0)
    with pytest.raises(LieError):
        minimizer_closed_form(A1, (2,), 2)


def test_minimizer_corrected_branches():
    # the two case-table corrections, pinned by brute force and polynomials
    assert minimizer_closed_form(B2, (0, 1), 2) == (0, 0)
    assert minimizer_closed_form(G2, (1, 2), 4) == (0, 1)
    assert minimizer_closed_form(G2, (1, 0), 5) == (0, 2)


def test_bruteforce_matches_table_grid():
    for rs in (A2, B2, G2):
        for a in (2, 3, 4, 5, 6):
            for m1 in range(5):
                for m2 in range(5 - m1):
                    lam = (m1, m2)
                    assert minimizer_bruteforce(rs, lam, a) == \
                        minimizer_closed_form(rs, lam, a), (rs.name, a, lam)


def test_maximizer_is_scaled_color():
    for rs in (A1, A2, B2, G2):
        for a in (2, 3):
            for lam in [(1,) * rs.rank, (2,) + (0,) * (rs.rank - 1)]:
                top, mult = maximizer_bruteforce(rs, lam, a)
                assert top == tuple(a * c for c in lam)
                assert mult == 1


def test_checked_sum_consistency():
    for rs, knot, lam in ((A2, TorusKnot(2, 3), (3, 0)),
                          (A2, TorusKnot(4, 5), (2, 2)),
                          (B2, TorusKnot(2, 5), (0, 1)),
                          (G2, TorusKnot(2, 3), (1, 0))):
        res = colored_jones(rs, knot, lam)
        chk = checked_sum(rs, knot, lam)
        assert chk.min_degree() == 0
        assert chk.coefficient(0) != 0
        rho = rs.rho
        prod = TruncatedSeries.one()
        for al in rs.positive_roots:
            e = rs.inner(tuple(lam[i] + rho[i] for i in range(rs.rank)), al)
            prod = prod * TruncatedSeries.from_exponents({0: 1, e: -1})
        assert res.shifted * prod == chk


def test_checked_sum_divides_to_shifted():
    from torus_tails.qseries import exact_div
    rs, knot, lam = A2, TorusKnot(2, 3), (3, 0)
    chk = checked_sum(rs, knot, lam)
    rho = rs.rho
    out = chk
    for al in rs.positive_roots:
        out = exact_div(out, rs.inner(
            tuple(lam[i] + rho[i] for i in range(rs.rank)), al))
    assert out == colored_jones(rs, knot, lam).shifted
    assert out.min_degree() == 0


def test_a1_smoke_family():
    # same pipeline, |W| = 2; exponents are integral after the shift
    for n in range(1, 8):
        res = colored_jones(A1, TorusKnot(2, 3), (n,))
        jh = res.shifted
        assert jh.min_degree() == 0
        assert jh.denom == 1
        top, mult = maximizer_bruteforce(A1, (n,), 2, 3)
        assert top == (2 * n,) and mult == 1


def test_a1_trefoil_tail_prefix():
    # the classical trefoil stable series: shifted members approach (q)_inf
    from torus_tails.qseries import euler_phi
    res = colored_jones(A1, TorusKnot(2, 3), (12,))
    jh = res.shifted
    sign = 1 if jh.coefficient(0) > 0 else -1
    assert jh.scaled(sign).agrees_with(euler_phi(12), 12)


def test_b2_half_integer_degrees():
    # B2 polynomials live in Z[q^(1/2)] under this normalization; the global
    # denominator carries the half-integer exponents exactly
    res = colored_jones(B2, TorusKnot(2, 3), (0, 1))
    assert res.delta_star == Fraction(-13, 2)
    assert res.shifted.denom == 2
    assert res.shifted.min_degree() == 0
    assert colored_jones(B2, TorusKnot(2, 3), (1, 0)).delta_star == \
        Fraction(-21, 2)


def test_summand_sort_is_deterministic():
    a = colored_jones(A2, TorusKnot(2, 3), (2, 1))
    b = colored_jones(A2, TorusKnot(2, 3), (2, 1))
    assert a.polynomial == b.polynomial


def test_fault_injection_corrupted_gram():
    # a corrupted inner product must make the minimizer cross-check fail
    # loudly rather than silently shift degrees
    from dataclasses import replace
    good = A2
    rows = [list(r) for r in good.gram]
    rows[1][1] = Fraction(10)  # wrong (lambda2, lambda2): 3*lambda2 no longer
    bad = replace(good, gram=tuple(tuple(r) for r in rows))  # minimizes
    lam = (5, 2)
    table = minimizer_closed_form(bad, lam, 2)
    try:
        brute = minimizer_bruteforce(bad, lam, 2, 3)
    except JonesError:
        return  # non-unique argmin is an acceptable loud failure
    assert brute != table
