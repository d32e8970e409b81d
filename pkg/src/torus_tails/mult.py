"""Weight and plethysm multiplicities, summation sets, hulls, missing points.

The production paths are the Kostant alternating sum for weight
multiplicities and the Weyl-group alternating sum for plethysm
multiplicities.  Each has an independent oracle: Freudenthal's recursion for
weights, and an Adams-operation character peeling for plethysms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .kostant import kostant
from .lie import LieError, RootSystem, Weight
from .quasipoly import QuasiPolynomial, fit_quasi_polynomial


class OracleLimitError(ValueError):
    """The brute-force oracle refused an input above its size guard."""


# -- weight multiplicities ---------------------------------------------------


def weight_mult(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    """m_lambda^mu via the Kostant multiplicity formula."""
    if not rs.is_dominant(lam):
        raise LieError("highest weight must be dominant")
    return _weight_mult(rs, lam, rs.dominant_conjugate(mu))


@lru_cache(maxsize=None)
def _weight_mult(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    rho = rs.rho
    lr = tuple(lam[i] + rho[i] for i in range(rs.rank))
    total = 0
    for mat, sign in rs.weyl_elements:
        im = _apply(mat, lr)
        arg = tuple(im[i] - mu[i] - rho[i] for i in range(rs.rank))
        rc = rs.to_root_coords(arg)
        if any(c.denominator != 1 or c < 0 for c in rc):
            continue
        total += sign * kostant(rs, tuple(int(c) for c in rc))
    return total


def _apply(mat, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in mat)


def weight_mult_freudenthal(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    """Independent oracle: Freudenthal's recursion from the top weight."""
    if not rs.is_dominant(lam):
        raise LieError("highest weight must be dominant")
    return _freudenthal_table(rs, lam).get(rs.dominant_conjugate(mu), 0)


@lru_cache(maxsize=None)
def _freudenthal_table(rs: RootSystem, lam: Weight) -> dict[Weight, int]:
    """Multiplicities of every dominant weight of V_lambda, computed once.

    The recursion only reads weights of strictly larger norm of mu+rho, so
    processing dominant weights in decreasing norm order is well-founded.
    """
    system = rs.weight_system(lam)
    rho = rs.rho
    lr = tuple(lam[i] + rho[i] for i in range(rs.rank))
    dominants = sorted(
        {w for w in system if rs.is_dominant(w)},
        key=lambda w: rs.norm2(tuple(w[i] + rho[i] for i in range(rs.rank))),
        reverse=True)
    table: dict[Weight, int] = {}
    for w in dominants:
        if w == lam:
            table[w] = 1
            continue
        wr = tuple(w[i] + rho[i] for i in range(rs.rank))
        den = rs.inner(lr, lr) - rs.inner(wr, wr)
        num = Fraction(0)
        for alpha in rs.positive_roots:
            j = 1
            while True:
                higher = tuple(w[i] + j * alpha[i] for i in range(rs.rank))
                if higher not in system:
                    break
                num += table[rs.dominant_conjugate(higher)] \
                    * rs.inner(higher, alpha)
                j += 1
        val = 2 * num / den
        assert val.denominator == 1
        table[w] = int(val)
    return table


# -- plethysm multiplicities -------------------------------------------------


def plethysm_mult(rs: RootSystem, lam: Weight, a: int, mu: Weight) -> int:
    """m^mu_{lambda,a}: signed sum over sigma with (mu+rho-sigma(rho))/a in
    the weight lattice (exact integer divisibility in weight coordinates)."""
    if a < 2:
        raise ValueError("Adams parameter a must be >= 2")
    total = 0
    for w, sign in rs.orbit_pairs():
        cand = tuple(mu[i] + w[i] for i in range(rs.rank))
        if any(c % a for c in cand):
            continue
        nu = tuple(c // a for c in cand)
        total += sign * weight_mult(rs, lam, nu)
    return total


def plethysm_adams_oracle(rs: RootSystem, lam: Weight, a: int, mu: Weight,
                          max_weights: int = 60000) -> int:
    """Decompose psi_a(ch_lambda) by greedy highest-weight peeling.

    Uses only Freudenthal multiplicities and weight systems, staying
    independent of the Weyl-alternating production path.
    """
    if a < 2:
        raise ValueError("Adams parameter a must be >= 2")
    system = rs.weight_system(lam)
    if len(system) > max_weights:
        raise OracleLimitError("oracle size limit")
    table = _freudenthal_table(rs, lam)
    virtual: dict[Weight, int] = {}
    for nu in system:
        m = table[rs.dominant_conjugate(nu)]
        scaled = tuple(a * c for c in nu)
        virtual[scaled] = virtual.get(scaled, 0) + m
    result: dict[Weight, int] = {}
    while True:
        live = [w for w, c in virtual.items() if c != 0]
        if not live:
            break
        top = max((w for w in live if rs.is_dominant(w)),
                  key=lambda w: (rs.inner(w, rs.rho), w), default=None)
        if top is None:
            raise OracleLimitError("virtual character failed to peel")
        c = virtual[top]
        result[top] = c
        peel = _freudenthal_table(rs, top)
        for nu in rs.weight_system(top):
            virtual[nu] = virtual.get(nu, 0) - c * peel[rs.dominant_conjugate(nu)]
    return result.get(mu, 0)


# -- the summation set and its lattice hull ----------------------------------


def summation_set(rs: RootSystem, lam: Weight, a: int,
                  keep_zero: bool = True) -> dict[Weight, int]:
    """S_{lambda,a} with plethysm multiplicities.

    Defined geometrically: union over sigma of sigma(rho)-rho + a*Pi_lambda,
    intersected with the dominant cone.  Members whose multiplicity vanishes
    are retained by default (the set is support-agnostic).
    """
    if not rs.is_dominant(lam):
        raise LieError("highest weight must be dominant")
    points: set[Weight] = set()
    for w, _ in rs.orbit_pairs():
        for nu in rs.weight_system(lam):
            mu = tuple(a * nu[i] - w[i] for i in range(rs.rank))
            if rs.is_dominant(mu):
                points.add(mu)
    out = {mu: plethysm_mult(rs, lam, a, mu) for mu in sorted(points)}
    if not keep_zero:
        out = {mu: m for mu, m in out.items() if m != 0}
    return out


@dataclass(frozen=True)
class LatticeHull:
    """L_{lambda,a} (cap) P_{a*lambda}: translated-lattice union and polytope."""

    rs: RootSystem
    lam: Weight
    a: int
    translates: tuple[Weight, ...]   # a*lam + sigma(rho) - rho

    def in_lattice(self, mu: Weight) -> bool:
        for base in self.translates:
            rc = self.rs.to_root_coords(
                tuple(mu[i] - base[i] for i in range(self.rs.rank)))
            if all(c.denominator == 1 and int(c) % self.a == 0 for c in rc):
                return True
        return False

    def in_polytope(self, mu: Weight) -> bool:
        if not self.rs.is_dominant(mu):
            return False
        top = tuple(self.a * c for c in self.lam)
        rc = self.rs.to_root_coords(
            tuple(top[i] - mu[i] for i in range(self.rs.rank)))
        return all(c >= 0 for c in rc)

    def points(self) -> tuple[Weight, ...]:
        """All dominant lattice points of the hull."""
        rs = self.rs
        top = tuple(self.a * c for c in self.lam)
        bounds = []
        for i in range(rs.rank):
            li = tuple(1 if j == i else 0 for j in range(rs.rank))
            bounds.append(int(rs.inner(top, li) / rs.inner(li, li)))
        coords: Iterable[Weight]
        if rs.rank == 1:
            coords = ((u,) for u in range(bounds[0] + 1))
        else:
            coords = ((u, v) for u in range(bounds[0] + 1)
                      for v in range(bounds[1] + 1))
        return tuple(mu for mu in coords
                     if self.in_polytope(mu) and self.in_lattice(mu))


def lattice_hull(rs: RootSystem, lam: Weight, a: int) -> LatticeHull:
    if not rs.is_dominant(lam):
        raise LieError("highest weight must be dominant")
    rho = rs.rho
    translates = []
    for w, _ in rs.orbit_pairs():
        translates.append(tuple(a * lam[i] - w[i] for i in range(rs.rank)))
    return LatticeHull(rs, lam, a, tuple(sorted(set(translates))))


def missing_points(rs: RootSystem, lam: Weight, a: int) -> tuple[Weight, ...]:
    """R_{lambda,a} = (hull points) minus S_{lambda,a}."""
    hull = lattice_hull(rs, lam, a)
    s = set(summation_set(rs, lam, a))
    return tuple(mu for mu in hull.points() if mu not in s)


def missing_point_bound_check(rs: RootSystem, lam: Weight, a: int,
                              n_range: Iterable[int]) -> dict:
    """Check (mu^,mu^) + 2(mu^, mu_min) >= n^2 over every missing point.

    Returns the per-n missing counts and the minimum slack; raises with a
    witness on violation (that would indicate a hull or normalization bug).
    """
    from .jones import minimizer_closed_form

    if rs.rank != 2:
        raise LieError("bound check is for the rank-2 algebras")
    report = {"algebra": rs.name, "lambda": lam, "a": a, "per_n": {},
              "min_slack": None}
    min_slack: Optional[Fraction] = None
    for n in n_range:
        ln = tuple(n * c for c in lam)
        mu_min = minimizer_closed_form(rs, ln, a)
        misses = missing_points(rs, ln, a)
        for mu in misses:
            hat = tuple(mu[i] - mu_min[i] for i in range(rs.rank))
            value = rs.norm2(hat) + 2 * rs.inner(hat, mu_min)
            slack = value - n * n
            if slack < 0:
                raise AssertionError(
                    f"missing-point bound violated: {rs.name} lambda={lam} "
                    f"a={a} n={n} mu={mu}: {value} < {n * n}")
            if min_slack is None or slack < min_slack:
                min_slack = slack
        report["per_n"][n] = len(misses)
    report["min_slack"] = min_slack
    return report


# -- G2 zero-weight closed forms ---------------------------------------------

_G2_C10 = {0: Fraction(1, 4), 1: Fraction(17, 36), 2: Fraction(25, 36)}
_G2_C01 = {0: Fraction(1, 12), 1: Fraction(-13, 36), 2: Fraction(-29, 36)}
_G2_C00_EVEN = {0: Fraction(1), 1: Fraction(29, 72), 2: Fraction(5, 9),
                3: Fraction(5, 8), 4: Fraction(7, 9), 5: Fraction(13, 72)}
_G2_C00_ODD = {0: Fraction(5, 8), 1: Fraction(29, 72), 2: Fraction(13, 72),
               3: Fraction(5, 8), 4: Fraction(29, 72), 5: Fraction(13, 72)}


def g2_zero_weight_mult(u: int, v: int) -> int:
    """m_lambda^0 for G2 with lambda = u*alpha1 + v*alpha2 dominant.

    Quartic quasi-polynomial; both periodic linear coefficients are functions
    of u mod 3, and the odd-v constant table is periodic in u mod 3 (the
    u=1 mod 6 entry reads 29/72, not the printed 5/18).  Exhaustively
    cross-checked against the Kostant evaluation in the tests.
    """
    base = Fraction(u**4, 9) - Fraction(29 * u**3 * v, 36) \
        - Fraction(7 * u**3, 36) + Fraction(17 * u**2 * v**2, 8) \
        + Fraction(2 * u**2 * v, 3) - Fraction(19 * u**2, 24) \
        - Fraction(29 * u * v**3, 12) - Fraction(u * v**2, 2) + 3 * u * v \
        + v**4 - Fraction(v**3, 12) - Fraction(21 * v**2, 8)
    base += _G2_C10[u % 3] * u + _G2_C01[u % 3] * v
    base += _G2_C00_EVEN[u % 6] if v % 2 == 0 else _G2_C00_ODD[u % 6]
    if base.denominator != 1:
        raise ArithmeticError(f"G2 zero-weight closed form non-integral at "
                              f"({u},{v})")
    return int(base)


def g2_plethysm_zero_a3(u: int, v: int) -> int:
    """m^0_{lambda,3} for G2, lambda = u*alpha1 + v*alpha2 dominant."""
    base = -u * u + Fraction(7 * u * v, 2) + Fraction(u, 2) - 3 * v * v \
        - Fraction(v, 2)
    if v % 2 == 1:
        base += Fraction(1, 2)
    elif u % 2 == 1:
        base += Fraction(1, 2)
    else:
        base += 1
    if base.denominator != 1:
        raise ArithmeticError(f"G2 a=3 closed form non-integral at ({u},{v})")
    return int(base)


# -- quasi-polynomial structure of the multiplicities ------------------------


def plethysm_sequence(rs: RootSystem, lam: Weight, a: int, mu_hat: Weight,
                      nu: Weight, ns: Sequence[int]) -> list[tuple[int, Fraction]]:
    """Samples of n -> m^{mu_hat + n*nu}_{n*lambda, a}."""
    out = []
    for n in ns:
        ln = tuple(n * c for c in lam)
        target = tuple(mu_hat[i] + n * nu[i] for i in range(rs.rank))
        out.append((n, Fraction(plethysm_mult(rs, ln, a, target))))
    return out


def plethysm_quasipoly_fit(rs: RootSystem, lam: Weight, a: int,
                           mu_hat: Weight, nu: Weight, n_max: int,
                           n_min: int = 1, modulus: int = 1, n0: int = 0,
                           max_period: int = 24) -> QuasiPolynomial:
    """Fit n -> m^{mu_hat+n*nu}_{n*lambda,a} on a residue class of n."""
    if rs.rank != 2:
        raise LieError("plethysm fitting is for the rank-2 algebras")
    ns = [n for n in range(n_min, n_max + 1) if (n - n0) % modulus == 0]
    samples = plethysm_sequence(rs, lam, a, mu_hat, nu, ns)
    return fit_quasi_polynomial(samples, max_period=max_period, max_degree=2,
                                require_integer_values=True)
