"""Weight/plethysm multiplicities, summation sets, hulls, missing points."""

import pytest

from torus_tails.lie import get_root_system
from torus_tails.mult import (OracleLimitError, g2_plethysm_zero_a3,
                              g2_zero_weight_mult, lattice_hull,
                              missing_point_bound_check, missing_points,
                              plethysm_adams_oracle, plethysm_mult,
                              plethysm_quasipoly_fit, summation_set,
                              weight_mult, weight_mult_freudenthal)

A1 = get_root_system("A1")
A2 = get_root_system("A2")
B2 = get_root_system("B2")
G2 = get_root_system("G2")


def test_highest_weight_multiplicity():
    for rs in (A2, B2, G2):
        for lam in [(2, 1), (0, 3), (1, 1)]:
            assert weight_mult(rs, lam, lam) == 1
            assert weight_mult_freudenthal(rs, lam, lam) == 1


def test_adjoint_zero_weight():
    assert weight_mult(A2, (1, 1), (0, 0)) == 2
    assert weight_mult_freudenthal(A2, (1, 1), (0, 0)) == 2


def test_a2_far_zone_case_formula():
    # m_lambda^mu = 1 + m2 once m1 - m2 > u1 + 2*u2 + 3 (m1 >= m2)
    for (m1, m2, u1, u2) in [(9, 1, 2, 1), (12, 2, 0, 0), (10, 3, 1, 1)]:
        assert m1 - m2 > u1 + 2 * u2 + 3
        lam, mu = (m1, m2), (u1, u2)
        if not A2.in_root_lattice((m1 - u1, m2 - u2)):
            continue
        assert weight_mult(A2, lam, mu) == 1 + m2


def test_weight_mult_weyl_invariance():
    lam = (3, 2)
    for mat, _ in A2.weyl_elements:
        for mu in [(1, 1), (0, 2), (2, 0)]:
            im = tuple(sum(mat[i][j] * mu[j] for j in range(2))
                       for i in range(2))
            assert weight_mult(A2, lam, im) == weight_mult(A2, lam, mu)


def test_freudenthal_agrees_exhaustive_a2():
    for m1 in range(4):
        for m2 in range(4 - m1):
            lam = (m1, m2)
            for mu in A2.weight_system(lam):
                assert weight_mult(A2, lam, mu) == \
                    weight_mult_freudenthal(A2, lam, mu), (lam, mu)


def test_freudenthal_agrees_b2_g2():
    for rs in (B2, G2):
        lam = (1, 1)
        for mu in rs.weight_system(lam):
            assert weight_mult(rs, lam, mu) == \
                weight_mult_freudenthal(rs, lam, mu)


def test_plethysm_top_weight_is_one():
    for rs in (A2, B2, G2):
        for a in (2, 3, 4):
            for lam in [(1, 0), (2, 1), (1, 1)]:
                assert plethysm_mult(rs, lam, a, tuple(a * c for c in lam)) == 1


def test_a2_case_table_a2():
    # the four-parity case table for a=2, m1 >= m2, mu in S_{lambda,2}
    for (m1, m2) in [(2, 0), (3, 1), (4, 2), (3, 0), (5, 1)]:
        lam = (m1, m2)
        for (u1, u2), m in summation_set(A2, lam, 2).items():
            d = 2 * (m1 - m2)
            if u1 % 2 == 0 and u2 % 2 == 0:
                want = 1 if u1 + 2 * u2 >= d else 0
            elif u1 % 2 == 0:
                want = -1 if u1 - u2 <= d <= u1 + 2 * u2 else 0
            elif u2 % 2 == 0:
                want = -1 if d < u1 - u2 else 0
            else:
                want = 0
            assert m == want, (lam, (u1, u2), m, want)


def test_a2_vanishing_criteria():
    for (m1, m2) in [(4, 1), (5, 2), (2, 2), (1, 4), (0, 3)]:
        lam = (m1, m2)
        for mu, m in summation_set(A2, lam, 2).items():
            if m != 0:
                if m1 >= m2:
                    assert mu[0] + 2 * mu[1] >= 2 * (m1 - m2)
                else:
                    assert 2 * mu[0] + mu[1] >= 2 * (m2 - m1)


def test_b2_zero_weight_plethysm_table():
    # m^0_{lambda,a} via the orbit reduction of the alternating sum
    for m1 in range(9):
        for m2 in range(9 - m1):
            lam = (m1, m2)
            m0 = lambda nu: weight_mult(B2, lam, nu)
            table = {
                2: m0((0, 0)) - m0((0, 1)) - m0((0, 2)) + m0((1, 1)),
                3: m0((0, 0)) - m0((1, 0)),
                4: m0((0, 0)) - m0((0, 1)),
                5: m0((0, 0)),
                6: m0((0, 0)),
            }
            for a, want in table.items():
                assert plethysm_mult(B2, lam, a, (0, 0)) == want, (lam, a)


def test_b2_zero_weight_value_cases():
    # a=2: +1 on the root lattice, -1 off it (never 0, so the origin is
    # always the degree minimizer)
    for m1 in range(6):
        for m2 in range(6 - m1):
            got = plethysm_mult(B2, (m1, m2), 2, (0, 0))
            assert got == (1 if m2 % 2 == 0 else -1)


def test_g2_zero_weight_closed_forms():
    for v in range(10):
        for u in range(21):
            if not (3 * v <= 2 * u <= 4 * v):
                continue
            lam = G2.from_root_coords((u, v))
            assert g2_zero_weight_mult(u, v) == weight_mult(G2, lam, (0, 0))
            assert g2_plethysm_zero_a3(u, v) == \
                plethysm_mult(G2, lam, 3, (0, 0))


def test_g2_zero_weight_a2_is_one():
    for v in range(8):
        for u in range(17):
            if 3 * v <= 2 * u <= 4 * v:
                lam = G2.from_root_coords((u, v))
                assert plethysm_mult(G2, lam, 2, (0, 0)) == 1


def test_adams_oracle_agrees_small_grid():
    for rs in (A2, B2):
        for a in (2, 3):
            for m1 in range(3):
                for m2 in range(3 - m1):
                    lam = (m1, m2)
                    for mu in lattice_hull(rs, lam, a).points():
                        assert plethysm_mult(rs, lam, a, mu) == \
                            plethysm_adams_oracle(rs, lam, a, mu), \
                            (rs.name, a, lam, mu)


def test_adams_oracle_guard():
    with pytest.raises(OracleLimitError):
        plethysm_adams_oracle(A2, (40, 40), 2, (0, 0), max_weights=10)


def test_adams_preserves_dimension():
    # sum of m^mu * dim V_mu over the summation set equals dim V_lambda
    for rs in (A2, B2):
        for a in (2, 3):
            for lam in [(1, 0), (1, 1), (2, 1)]:
                total = sum(m * rs.dim_irrep(mu)
                            for mu, m in summation_set(rs, lam, a).items())
                assert total == rs.dim_irrep(lam), (rs.name, a, lam)


def test_summation_set_examples():
    s = summation_set(B2, (1, 1), 2)
    assert set(s) == {(2, 2), (0, 4), (3, 0), (2, 0), (0, 2), (1, 0), (0, 0)}
    assert summation_set(A2, (0, 0), 3) == {(0, 0): 1}
    for rs, lam, a in ((A2, (2, 1), 2), (B2, (1, 0), 3), (G2, (1, 1), 2)):
        assert tuple(a * c for c in lam) in summation_set(rs, lam, a)


def test_support_inside_hull():
    for rs, lam, a in ((A2, (2, 1), 2), (B2, (1, 1), 2), (G2, (1, 0), 2),
                       (A2, (1, 1), 4)):
        hull = lattice_hull(rs, lam, a)
        pts = set(hull.points())
        for mu, m in summation_set(rs, lam, a).items():
            assert mu in pts, (rs.name, lam, a, mu)


def test_missing_points_examples():
    assert (1, 2) in missing_points(B2, (1, 1), 2)
    for n in range(1, 9):
        assert missing_points(A2, (n, 0), 2) == ()
    assert missing_points(A2, (0, 0), 2) == ()


def test_missing_point_bound():
    rep = missing_point_bound_check(B2, (1, 1), 2, range(1, 7))
    assert rep["min_slack"] is None or rep["min_slack"] >= 0
    rep = missing_point_bound_check(G2, (1, 0), 2, range(1, 5))
    assert all(isinstance(v, int) for v in rep["per_n"].values())


def test_plethysm_quasipoly_fit_t45():
    qp = plethysm_quasipoly_fit(A2, (1, 1), 4, (0, 0), (0, 0), 16)
    assert qp.degree == 1
    assert qp(50) == 51  # m^0_{n rho, 4} = n + 1


def test_plethysm_quasipoly_fit_sign_ray():
    # m^{n*lambda2}_{n*lambda1, 2} = (-1)^n: the parity table's case 2 applies
    # at odd n
    qp = plethysm_quasipoly_fit(A2, (1, 0), 2, (0, 0), (0, 1), 16)
    assert qp.degree == 0 and qp.period == 2
    assert qp(34) == 1 and qp(33) == -1


def test_plethysm_quasipoly_fit_constant_on_class():
    # restricted to even n the same ray is constant 1
    qp = plethysm_quasipoly_fit(A2, (1, 0), 2, (0, 0), (0, 1), 20,
                                modulus=2, n0=0)
    assert qp.degree == 0 and qp(34) == 1
