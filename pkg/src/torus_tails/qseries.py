"""Exact truncated Laurent series in q with rational exponents.

A series lives in Z((q^(1/D))) for a global exponent denominator D: terms map
exponent *numerators* (meaning q^(e/D)) to arbitrary-precision integer
coefficients, and an optional truncation order O guarantees every coefficient
at exponents below O/D is exact.  Coefficients at or beyond the order are
unknown and never reported.  All arithmetic is pure integer arithmetic on the
numerators; orders propagate to the tightest provably-exact bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Union

Exponent = Union[int, Fraction]


class SeriesError(ValueError):
    """Invalid q-series operation."""


class SeriesDivisionError(SeriesError):
    """Exact division failed: remainder nonzero."""


def _as_fraction(e: Exponent) -> Fraction:
    return e if isinstance(e, Fraction) else Fraction(e)


@dataclass(frozen=True)
class TruncatedSeries:
    """Element of Z((q^(1/denom))), exact below order/denom.

    ``terms`` is a sorted tuple of (exponent_numerator, coefficient) pairs with
    no zero coefficients; ``order`` is the truncation bound as an exponent
    numerator, or None for an exact (untruncated) value such as a polynomial.
    The zero constant is the empty term tuple with order None.
    """

    denom: int = 1
    terms: tuple[tuple[int, int], ...] = ()
    order: Optional[int] = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def make(terms: Mapping[int, int], denom: int = 1,
             order: Optional[int] = None) -> "TruncatedSeries":
        """Build a series from numerator->coefficient, normalizing denom."""
        if denom <= 0:
            raise SeriesError("denominator must be positive")
        kept = {e: c for e, c in terms.items() if c != 0}
        if order is not None:
            kept = {e: c for e, c in kept.items() if e < order}
        g = denom
        for e in kept:
            g = gcd(g, e)
        if order is not None:
            g = gcd(g, order)
        g = g or denom
        if g > 1:
            kept = {e // g: c for e, c in kept.items()}
            order = order // g if order is not None else None
            denom //= g
        return TruncatedSeries(denom, tuple(sorted(kept.items())), order)

    @staticmethod
    def from_exponents(terms: Mapping[Exponent, int],
                       order: Optional[Exponent] = None) -> "TruncatedSeries":
        """Build a series from rational exponents."""
        fracs = {_as_fraction(e): c for e, c in terms.items()}
        denom = 1
        for e in fracs:
            denom = lcm(denom, e.denominator)
        o = None
        if order is not None:
            of = _as_fraction(order)
            denom = lcm(denom, of.denominator)
            o = int(of * denom)
        return TruncatedSeries.make(
            {int(e * denom): c for e, c in fracs.items()}, denom, o)

    @staticmethod
    def zero() -> "TruncatedSeries":
        return TruncatedSeries()

    @staticmethod
    def one() -> "TruncatedSeries":
        return TruncatedSeries(terms=((0, 1),))

    @staticmethod
    def monomial(exp: Exponent, coeff: int = 1) -> "TruncatedSeries":
        return TruncatedSeries.from_exponents({exp: coeff})

    # -- views -------------------------------------------------------------

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_exact(self) -> bool:
        return self.order is None

    def order_exponent(self) -> Optional[Fraction]:
        return None if self.order is None else Fraction(self.order, self.denom)

    def min_degree(self) -> Fraction:
        """delta*: smallest stored exponent.  Undefined for empty series."""
        if not self.terms:
            raise SeriesError("min degree of a series with no terms")
        return Fraction(self.terms[0][0], self.denom)

    def max_degree(self) -> Fraction:
        if self.order is not None:
            raise SeriesError("max degree of a truncated series")
        if not self.terms:
            raise SeriesError("max degree of the zero series")
        return Fraction(self.terms[-1][0], self.denom)

    def coefficient(self, exp: Exponent) -> int:
        """Coefficient at q^exp; raises if exp is at or beyond the order."""
        e = _as_fraction(exp) * self.denom
        if e.denominator != 1:
            if self.order is not None and _as_fraction(exp) >= self.order_exponent():
                raise SeriesError("coefficient beyond truncation order")
            return 0
        en = int(e)
        if self.order is not None and en >= self.order:
            raise SeriesError("coefficient beyond truncation order")
        for e0, c in self.terms:
            if e0 == en:
                return c
        return 0

    def coefficients_upto(self, bound: Exponent) -> dict[Fraction, int]:
        """All nonzero coefficients with exponent < bound (must be exact there)."""
        b = _as_fraction(bound)
        if self.order is not None and b > self.order_exponent():
            raise SeriesError("requested coefficients beyond truncation order")
        return {Fraction(e, self.denom): c for e, c in self.terms
                if Fraction(e, self.denom) < b}

    # -- arithmetic --------------------------------------------------------

    def _aligned(self, other: "TruncatedSeries"):
        d = lcm(self.denom, other.denom)
        f1, f2 = d // self.denom, d // other.denom
        t1 = {e * f1: c for e, c in self.terms}
        t2 = {e * f2: c for e, c in other.terms}
        o1 = None if self.order is None else self.order * f1
        o2 = None if other.order is None else other.order * f2
        return d, t1, o1, t2, o2

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        d, t1, o1, t2, o2 = self._aligned(other)
        out = dict(t1)
        for e, c in t2.items():
            out[e] = out.get(e, 0) + c
        order = _min_order(o1, o2)
        return TruncatedSeries.make(out, d, order)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.denom,
                               tuple((e, -c) for e, c in self.terms),
                               self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def _effective_min(self, order, terms) -> Optional[int]:
        # smallest exponent this value could contribute: min term, else order
        if terms:
            return min(terms)
        return order  # None for the true zero

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if (self.is_zero and self.order is None) or \
           (other.is_zero and other.order is None):
            return TruncatedSeries.zero()
        d, t1, o1, t2, o2 = self._aligned(other)
        m1 = min(t1) if t1 else o1
        m2 = min(t2) if t2 else o2
        order = _min_order(
            None if o2 is None or m1 is None else m1 + o2,
            None if o1 is None or m2 is None else m2 + o1,
        )
        out: dict[int, int] = {}
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                e = e1 + e2
                if order is not None and e >= order:
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        return TruncatedSeries.make(out, d, order)

    def scaled(self, k: int) -> "TruncatedSeries":
        if k == 0:
            return TruncatedSeries(order=self.order, denom=self.denom)
        return TruncatedSeries(self.denom,
                               tuple((e, k * c) for e, c in self.terms),
                               self.order)

    def shifted(self, exp: Exponent) -> "TruncatedSeries":
        """Multiply by q^exp."""
        f = _as_fraction(exp)
        d = lcm(self.denom, f.denominator)
        s = int(f * d)
        fac = d // self.denom
        return TruncatedSeries.make(
            {e * fac + s: c for e, c in self.terms}, d,
            None if self.order is None else self.order * fac + s)

    def truncated(self, order: Exponent) -> "TruncatedSeries":
        """Forget everything at or above q^order."""
        f = _as_fraction(order)
        d = lcm(self.denom, f.denominator)
        o = int(f * d)
        fac = d // self.denom
        oo = o if self.order is None else min(o, self.order * fac)
        return TruncatedSeries.make({e * fac: c for e, c in self.terms}, d, oo)

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise SeriesError("negative powers are not defined")
        out = TruncatedSeries.one()
        for _ in range(n):
            out = out * self
        return out

    def agrees_with(self, other: "TruncatedSeries", upto: Exponent) -> bool:
        """Coefficient-by-coefficient equality below q^upto."""
        diff = self - other
        b = _as_fraction(upto)
        if diff.order is not None and Fraction(diff.order, diff.denom) < b:
            raise SeriesError("comparison bound beyond common exactness")
        return all(Fraction(e, diff.denom) >= b for e, _ in diff.terms)

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "denom": self.denom,
            "order": self.order,
            "terms": [[e, str(c)] for e, c in self.terms],
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "TruncatedSeries":
        return TruncatedSeries.make({int(e): int(c) for e, c in obj["terms"]},
                                    int(obj["denom"]), obj.get("order"))

    def __str__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            parts = []
            for e, c in self.terms[:12]:
                exp = Fraction(e, self.denom)
                if exp == 0:
                    parts.append(f"{c:+d}")
                else:
                    parts.append(f"{c:+d}*q^{exp}")
            body = " ".join(parts) + (" + ..." if len(self.terms) > 12 else "")
        if self.order is not None:
            body += f" + O(q^{Fraction(self.order, self.denom)})"
        return body


def _min_order(o1: Optional[int], o2: Optional[int]) -> Optional[int]:
    if o1 is None:
        return o2
    if o2 is None:
        return o1
    return min(o1, o2)


# -- special series ---------------------------------------------------------


def geometric_inverse(e: Exponent, order: Exponent) -> TruncatedSeries:
    """1/(1-q^e) = sum_{j>=0} q^(je), truncated below order."""
    ef = _as_fraction(e)
    if ef <= 0:
        raise SeriesError("non-expandable denominator")
    of = _as_fraction(order)
    terms: dict[Fraction, int] = {}
    j = 0
    while j * ef < of:
        terms[j * ef] = 1
        j += 1
    return TruncatedSeries.from_exponents(terms, order=of)


def exact_div(f: TruncatedSeries, e: Exponent) -> TruncatedSeries:
    """Divide the polynomial f exactly by (1 - q^e)."""
    if f.order is not None:
        raise SeriesError("exact division needs a finitely-supported series")
    if f.is_zero:
        return TruncatedSeries.zero()
    ef = _as_fraction(e)
    if ef <= 0:
        raise SeriesError("non-expandable denominator")
    d = lcm(f.denom, ef.denominator)
    m = int(ef * d)
    fac = d // f.denom
    p = {ex * fac: c for ex, c in f.terms}
    top = max(p)
    # q = f/(1-q^m): q[k] = f[k] + q[k-m]; remainder iff q[k] != 0 above top-m
    support = set(p)
    frontier = sorted(support)
    for ex in frontier:
        k = ex + m
        while k <= top and k not in support:
            support.add(k)
            k += m
    quot: dict[int, int] = {}
    for ex in sorted(support):
        val = p.get(ex, 0) + quot.get(ex - m, 0)
        if val:
            quot[ex] = val
    for ex, val in quot.items():
        if ex > top - m and val:
            raise SeriesDivisionError("division remainder nonzero")
    return TruncatedSeries.make(quot, d, None)


@dataclass(frozen=True)
class ThetaParams:
    """Parameters of theta_{b,c}(q) = sum_s (-1)^s q^{(b/2)s^2 + c s}.

    Only pairs whose exponents are integers for every s are supported; that is
    b integral and c congruent to b/2 mod 1, which covers every theta arising
    from the torus-knot tails.
    """

    b: Fraction
    c: Fraction

    def __post_init__(self):
        b = _as_fraction(self.b)
        c = _as_fraction(self.c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if b <= 0:
            raise SeriesError("theta parameter b must be positive")
        if b.denominator != 1 or (c - b / 2).denominator != 1:
            raise SeriesError("non-integral exponent encountered")

    def exponent(self, s: int) -> int:
        e = self.b / 2 * s * s + self.c * s
        assert e.denominator == 1
        return int(e)


def theta(params: ThetaParams, order: Exponent) -> TruncatedSeries:
    """theta_{b,c} summed over every s whose exponent lies below order."""
    of = _as_fraction(order)
    vertex = -params.c / params.b
    terms: dict[Fraction, int] = {}
    for stride in (1, -1):
        s = 0 if stride == 1 else -1
        while True:
            e = params.exponent(s)
            if e < of:
                fe = Fraction(e)
                terms[fe] = terms.get(fe, 0) + (1 if s % 2 == 0 else -1)
            elif (stride == 1 and s > vertex) or (stride == -1 and s < vertex):
                # exponent grows monotonically past the parabola vertex
                break
            s += stride
    return TruncatedSeries.from_exponents(terms, order=of)


def pochhammer(a: Exponent, order: Exponent, step: Exponent = 1) -> TruncatedSeries:
    """(q^a; q^step)_inf = prod_{k>=0} (1 - q^(a+k*step)), truncated.

    Factors with exponent >= order are identically 1 below the order, so the
    product is finite; a and step must be positive for convergence.
    """
    af, sf = _as_fraction(a), _as_fraction(step)
    if af <= 0 or sf <= 0:
        raise SeriesError("divergent Pochhammer parameters")
    of = _as_fraction(order)
    out = TruncatedSeries.one().truncated(of)
    k = 0
    while af + k * sf < of:
        factor = TruncatedSeries.from_exponents({0: 1, af + k * sf: -1})
        out = out * factor
        k += 1
    return out.truncated(of)


def euler_phi(order: Exponent) -> TruncatedSeries:
    """(q)_inf = (q; q)_inf."""
    return pochhammer(1, order)


def product_of(factors: Iterable[TruncatedSeries]) -> TruncatedSeries:
    out = TruncatedSeries.one()
    for f in factors:
        out = out * f
    return out
