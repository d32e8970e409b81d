"""Root-system data: Weyl groups, orbit tables, Gram anchors, weight systems."""

from fractions import Fraction

import pytest

from torus_tails.lie import LieError, get_root_system

A1 = get_root_system("A1")
A2 = get_root_system("A2")
B2 = get_root_system("B2")
G2 = get_root_system("G2")


def test_lookup_case_insensitive():
    assert get_root_system("b2") is B2
    with pytest.raises(LieError):
        get_root_system("C2")


def test_weyl_group_orders():
    assert [len(rs.weyl_elements) for rs in (A1, A2, B2, G2)] == [2, 6, 8, 12]


def test_positive_roots_sum_to_2rho():
    for rs in (A1, A2, B2, G2):
        total = tuple(sum(a[i] for a in rs.positive_roots)
                      for i in range(rs.rank))
        assert total == tuple(2 * c for c in rs.rho)


def test_orbit_table_A2():
    # the (2,-1) entry is sometimes misprinted as (1,-2); the reflection
    # computation gives (2,-1), and (1,-2) is not a nonnegative sum of
    # positive roots
    expected = {((0, 0), 1), ((2, -1), -1), ((-1, 2), -1), ((0, 3), 1),
                ((3, 0), 1), ((2, 2), -1)}
    assert set(A2.orbit_pairs()) == expected


def test_orbit_table_B2():
    expected = {((0, 0), 1), ((2, -2), -1), ((-1, 2), -1), ((-1, 4), 1),
                ((3, -2), 1), ((3, 0), -1), ((0, 4), -1), ((2, 2), 1)}
    assert set(B2.orbit_pairs()) == expected


def test_orbit_identity_entry():
    for rs in (A1, A2, B2, G2):
        assert ((0,) * rs.rank, 1) in rs.orbit_pairs()


def test_orbit_entries_are_positive_root_sums():
    # Kostant: rho - sigma(rho) is a sum of distinct positive roots
    for rs in (A2, B2, G2):
        for w, _ in rs.orbit_pairs():
            rc = rs.to_root_coords(w)
            assert all(c.denominator == 1 and c >= 0 for c in rc), (rs.name, w)


def test_gram_anchored_quadratic_forms():
    for m1 in range(5):
        for m2 in range(5):
            lam = (m1, m2)
            assert A2.norm2(lam) == Fraction(2, 3) * (m1 * m1 + m1 * m2 + m2 * m2)
            assert B2.norm2(lam) == m1 * m1 + m1 * m2 + Fraction(m2 * m2, 2)
            assert G2.norm2(lam) == 2 * m1 * m1 + 6 * m1 * m2 + 6 * m2 * m2


def test_inner_examples():
    assert A2.inner((1, 0), (1, 0)) == Fraction(2, 3)
    assert B2.inner((1, 1), (1, 1)) == Fraction(5, 2)
    assert A2.inner((0, 0), (3, 1)) == 0


def test_reflections_preserve_inner_product():
    for rs in (A2, B2, G2):
        probes = [(1, 0), (0, 1), (2, 3), (-1, 4)]
        for mat, _ in rs.weyl_elements:
            for mu in probes:
                for nu in probes:
                    im_mu = tuple(sum(mat[i][j] * mu[j] for j in range(2))
                                  for i in range(2))
                    im_nu = tuple(sum(mat[i][j] * nu[j] for j in range(2))
                                  for i in range(2))
                    assert rs.inner(im_mu, im_nu) == rs.inner(mu, nu)


def test_root_lattice_membership():
    assert A2.in_root_lattice((1, 1))
    assert not A2.in_root_lattice((1, 0))
    assert not B2.in_root_lattice((0, 1))
    assert B2.in_root_lattice((3, 2))
    for mu in [(0, 0), (1, 0), (0, 1), (2, 3)]:
        assert G2.in_root_lattice(mu)
    assert A1.in_root_lattice((2,)) and not A1.in_root_lattice((1,))


def test_fundamental_group_orders():
    assert (A2.fundamental_group_order, B2.fundamental_group_order,
            G2.fundamental_group_order, A1.fundamental_group_order) \
        == (3, 2, 1, 2)


def test_weight_system_trivial_and_fundamental():
    assert A2.weight_system((0, 0)) == {(0, 0)}
    assert A2.weight_system((1, 0)) == {(1, 0), (-1, 1), (0, -1)}


def test_weight_system_requires_dominant():
    with pytest.raises(LieError):
        A2.weight_system((-1, 0))


def test_weight_system_closed_under_weyl():
    for rs in (A2, B2, G2):
        for lam in [(1, 0), (1, 1), (0, 2)]:
            system = rs.weight_system(lam)
            for mat, _ in rs.weyl_elements:
                for mu in system:
                    im = tuple(sum(mat[i][j] * mu[j] for j in range(2))
                               for i in range(2))
                    assert im in system


def test_dimension_oracle_adjoint():
    # adjoint representations: A2 at rho has dim 8
    assert A2.dim_irrep((1, 1)) == 8
    assert B2.dim_irrep((1, 0)) == 5      # vector rep of so(5)
    assert B2.dim_irrep((0, 1)) == 4      # spinor
    assert B2.dim_irrep((0, 2)) == 10     # adjoint, highest root alpha1+2alpha2
    assert G2.dim_irrep((1, 0)) == 7      # alpha1 short in this labeling
    assert G2.dim_irrep((0, 1)) == 14     # adjoint
    assert A1.dim_irrep((3,)) == 4


def test_multiplicity_sums_match_dimension():
    from torus_tails.mult import weight_mult
    for rs in (A2, B2, G2):
        for m1 in range(7):
            for m2 in range(7 - m1):
                lam = (m1, m2)
                total = sum(weight_mult(rs, lam, mu)
                            for mu in rs.weight_system(lam))
                assert total == rs.dim_irrep(lam), (rs.name, lam)
