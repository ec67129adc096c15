"""Virtual Poincare polynomial calculus for satellite families.

The quantities here are exact integer Laurent polynomials: the polynomial
of the space itself, the polynomial of its horospherical degeneration,
and the ratio between a family member and the base polynomial.  Ratios
are represented as Laurent polynomials with nonpositive exponents (the
natural variable is the inverse of t); rendering uses the same canonical
string form as everything else.

Division failures are data, not crashes: each operation raises a typed
error carrying the obstruction, and the verification driver records such
failures as first-class check results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .exactpoly import LaurentPoly, NotDivisible, ToolkitError, exact_div


class NotPolynomialInInverse(ToolkitError):
    """A ratio came out exact but with positive exponents; carries it."""

    def __init__(self, message: str, quotient: LaurentPoly):
        super().__init__(message)
        self.quotient = quotient


class MissingData(ToolkitError):
    """A record lacks the optional integers a check needs."""


@dataclass(frozen=True)
class PoincareRecord:
    """Polynomial data of one homogeneous space and its degeneration.

    ``p_gh`` and ``p_gh_empty`` are the polynomials of the space and of
    its horospherical degeneration; both are monic of the same degree
    (same dimension, irreducible).  The optional integers record ranks and
    maximal-unipotent dimensions of the ambient group and the subgroup,
    used by the degree laws; they are catalog inputs, never derived here.
    """

    label: str
    p_gh: LaurentPoly
    p_gh_empty: LaurentPoly
    r_empty: LaurentPoly | None = None
    rank: int | None = None
    u_g: int | None = None
    u_h: int | None = None
    r_g: int | None = None
    r_h: int | None = None

    def __post_init__(self):
        for name, poly in (("p_gh", self.p_gh), ("p_gh_empty", self.p_gh_empty)):
            if poly.is_zero():
                raise ValueError(f"{self.label}: {name} is zero")
        if self.p_gh.degree() != self.p_gh_empty.degree():
            raise ValueError(
                f"{self.label}: degrees differ "
                f"({self.p_gh.degree()} vs {self.p_gh_empty.degree()})"
            )
        for name, poly in (("p_gh", self.p_gh), ("p_gh_empty", self.p_gh_empty)):
            if poly.leading_coefficient() != 1:
                raise ValueError(f"{self.label}: {name} is not monic")


@dataclass(frozen=True)
class SatelliteFamily:
    """Polynomials of a full satellite family, one per subset of 1..rank."""

    rank: int
    polynomials: Mapping[frozenset[int], LaurentPoly]

    def __post_init__(self):
        expected = 2**self.rank
        if len(self.polynomials) != expected:
            raise ValueError(
                f"family needs {expected} members, got {len(self.polynomials)}"
            )
        universe = frozenset(range(1, self.rank + 1))
        degrees = set()
        for subset, poly in self.polynomials.items():
            if not subset <= universe:
                raise ValueError(f"family subset {sorted(subset)} out of range")
            if poly.is_zero() or poly.leading_coefficient() != 1:
                raise ValueError(f"family member {sorted(subset)} is not monic")
            degrees.add(poly.degree())
        if len(degrees) != 1:
            raise ValueError(f"family members have mixed degrees {sorted(degrees)}")

    def member(self, subset: frozenset[int]) -> LaurentPoly:
        return self.polynomials[frozenset(subset)]


def inverse_degree(ratio: LaurentPoly) -> int:
    """Degree of a ratio as a polynomial in the inverse variable."""
    if ratio.is_zero():
        raise ValueError("the zero ratio has no degree")
    return -ratio.min_exp()


def ratio_r(p_i: LaurentPoly, p: LaurentPoly) -> LaurentPoly:
    """Exact ratio of a family member by the base polynomial.

    The result must be a polynomial in the inverse variable, i.e. involve
    only exponents <= 0.  If the division clears but positive exponents
    survive, the quotient is reported inside
    :class:`NotPolynomialInInverse` rather than discarded: such an input
    is a counterexample candidate, not a bug.
    """
    quotient = exact_div(p_i, p)
    if not quotient.is_zero() and quotient.degree() > 0:
        raise NotPolynomialInInverse(
            f"ratio has positive exponents up to {quotient.degree()}: {quotient}",
            quotient,
        )
    return quotient


def wonderful_sum(family: SatelliteFamily) -> LaurentPoly:
    """Sum of family members divided by (t - 1) per missing index.

    Every member must be exactly divisible by (t - 1)^(rank - |subset|);
    a failing subset is named in the :class:`NotDivisible` error.
    """
    t_minus_1 = LaurentPoly.t() - LaurentPoly.one()
    total = LaurentPoly.zero()
    for size in range(family.rank + 1):
        for subset in sorted(
            (s for s in family.polynomials if len(s) == size),
            key=sorted,
        ):
            divisor = t_minus_1 ** (family.rank - size)
            try:
                total = total + exact_div(family.member(subset), divisor)
            except NotDivisible as exc:
                raise NotDivisible(
                    f"family member {sorted(subset)} is not divisible by "
                    f"(t - 1)^{family.rank - size}",
                    remainder=exc.remainder,
                ) from exc
    return total


@dataclass(frozen=True)
class BrionPeyreFactorization:
    """Result of stripping the torus and unipotent factors from a polynomial."""

    q: LaurentPoly
    nonnegative: bool
    unit_constant_term: bool


def brion_peyre_q(p: LaurentPoly, u_diff: int, r_diff: int) -> BrionPeyreFactorization:
    """Divide out t^u_diff (t - 1)^r_diff and report the cofactor's shape."""
    if u_diff < 0 or r_diff < 0:
        raise ValueError(f"differences must be nonnegative, got {u_diff}, {r_diff}")
    divisor = LaurentPoly.t(u_diff) * (
        (LaurentPoly.t() - LaurentPoly.one()) ** r_diff
    )
    q = exact_div(p, divisor)
    nonnegative = all(c > 0 for c in q.terms.values())
    return BrionPeyreFactorization(
        q=q,
        nonnegative=nonnegative,
        unit_constant_term=(q.constant_term == 1),
    )


@dataclass(frozen=True)
class DegreeLawReport:
    """Computed versus recorded degree of the base ratio."""

    label: str
    r_empty: LaurentPoly
    degree: int
    expected_degree: int
    degree_matches: bool
    constant_term_one: bool

    @property
    def passed(self) -> bool:
        return self.degree_matches and self.constant_term_one


def check_degree_laws(rec: PoincareRecord) -> DegreeLawReport:
    """Check the degree of the base ratio against the recorded integers.

    The expected degree is the difference of maximal-unipotent dimensions;
    the ratio must also have constant term 1 (monic same-degree input).
    Raises :class:`MissingData` when the record lacks the integers.
    """
    if rec.u_g is None or rec.u_h is None:
        raise MissingData(f"{rec.label}: no unipotent dimensions recorded")
    ratio = ratio_r(rec.p_gh_empty, rec.p_gh)
    degree = inverse_degree(ratio)
    expected = rec.u_g - rec.u_h
    return DegreeLawReport(
        label=rec.label,
        r_empty=ratio,
        degree=degree,
        expected_degree=expected,
        degree_matches=(degree == expected),
        constant_term_one=(ratio.constant_term == 1),
    )


@dataclass(frozen=True)
class HorosphericalFactor:
    """Base polynomial of the torus fibration and its value at zero."""

    base: LaurentPoly
    value_at_zero: int


def horospherical_factor(p_gh_empty: LaurentPoly, r: int) -> HorosphericalFactor:
    """Divide the degeneration polynomial by (t - 1)^r, exactly.

    The quotient is the polynomial of the base of the torus fibration; its
    value at zero is reported alongside (it should be 1).
    """
    if r < 0:
        raise ValueError(f"rank must be nonnegative, got {r}")
    divisor = (LaurentPoly.t() - LaurentPoly.one()) ** r
    base = exact_div(p_gh_empty, divisor)
    if not base.is_zero() and base.min_exp() < 0:
        raise NotDivisible(
            "quotient has negative exponents; inconsistent (polynomial, rank) pair",
            remainder=base,
        )
    return HorosphericalFactor(base=base, value_at_zero=base.constant_term)
