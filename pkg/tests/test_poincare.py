import random

import pytest

from sphsat.exactpoly import LaurentPoly, NotDivisible, parse_poly
from sphsat.poincare import (
    MissingData,
    NotPolynomialInInverse,
    PoincareRecord,
    SatelliteFamily,
    brion_peyre_q,
    check_degree_laws,
    horospherical_factor,
    inverse_degree,
    ratio_r,
    wonderful_sum,
)


def test_ratio_two_term():
    assert ratio_r(parse_poly("t^2 - 1"), parse_poly("t^2")) == parse_poly("1 - t^-2")


def test_ratio_of_self_is_one():
    p = parse_poly("(t - 1)*(t + 1)^3")
    assert ratio_r(p, p) == LaurentPoly.one()


def test_ratio_triple_family_values():
    base = parse_poly("t^2*(t - 1)^2*(t + 1)^2")
    member = parse_poly("t*(t - 1)^2*(t + 1)^3")
    assert ratio_r(member, base) == parse_poly("1 + t^-1")
    horo = parse_poly("(t - 1)^3*(t + 1)^3")
    assert ratio_r(horo, base) == parse_poly("1 - t^-2")


def test_ratio_reports_positive_exponents():
    with pytest.raises(NotPolynomialInInverse) as info:
        ratio_r(parse_poly("t^3 + t^2"), parse_poly("t^2"))
    assert info.value.quotient == parse_poly("t + 1")


def test_ratio_propagates_not_divisible():
    with pytest.raises(NotDivisible):
        ratio_r(parse_poly("t^2 + 1"), parse_poly("t + 1"))


def test_wonderful_sum_rank_one():
    family = SatelliteFamily(
        rank=1,
        polynomials={
            frozenset(): parse_poly("t^2 - 1"),
            frozenset({1}): parse_poly("t^2"),
        },
    )
    assert wonderful_sum(family) == parse_poly("t^2 + t + 1")


def test_wonderful_sum_rank_zero():
    p = parse_poly("t^3 + 2t + 1")
    family = SatelliteFamily(rank=0, polynomials={frozenset(): p})
    assert wonderful_sum(family) == p


def test_wonderful_sum_names_offending_subset():
    family = SatelliteFamily(
        rank=1,
        polynomials={
            frozenset(): parse_poly("t^2 + 1"),  # not divisible by t - 1
            frozenset({1}): parse_poly("t^2"),
        },
    )
    with pytest.raises(NotDivisible) as info:
        wonderful_sum(family)
    assert "[]" in str(info.value)


def test_wonderful_sum_round_trip_random(rng: random.Random):
    # Families built as unit * (t - 1)^(r - |I|) reproduce the plain sum of
    # the units.
    t_minus_1 = parse_poly("t - 1")
    for _ in range(50):
        rank = rng.randint(1, 3)
        members = {}
        units = {}
        from itertools import combinations

        subsets = [
            frozenset(c)
            for size in range(rank + 1)
            for c in combinations(range(1, rank + 1), size)
        ]
        degree = rng.randint(2, 4)
        for subset in subsets:
            unit = LaurentPoly(
                {degree: 1, **{k: rng.randint(0, 3) for k in range(degree)}}
            )
            units[subset] = unit
            members[subset] = unit * t_minus_1 ** (rank - len(subset))
        top = max(p.degree() for p in members.values())
        members = {s: p.shift(top - p.degree()) for s, p in members.items()}
        shifted_units = {
            s: units[s].shift(top - units[s].degree() - (rank - len(s)))
            for s in subsets
        }
        family = SatelliteFamily(rank=rank, polynomials=members)
        expected = LaurentPoly.zero()
        for unit in shifted_units.values():
            expected = expected + unit
        assert wonderful_sum(family) == expected


def test_family_validation():
    with pytest.raises(ValueError):
        SatelliteFamily(rank=1, polynomials={frozenset(): LaurentPoly.one()})
    with pytest.raises(ValueError):
        SatelliteFamily(
            rank=1,
            polynomials={
                frozenset(): parse_poly("t^2"),
                frozenset({1}): parse_poly("t"),  # mixed degrees
            },
        )
    with pytest.raises(ValueError):
        SatelliteFamily(
            rank=1,
            polynomials={
                frozenset(): parse_poly("2t"),  # not monic
                frozenset({1}): parse_poly("t"),
            },
        )


def test_brion_peyre_strip():
    report = brion_peyre_q(parse_poly("t*(t^2 - 1)"), 1, 1)
    assert report.q == parse_poly("t + 1")
    assert report.nonnegative
    assert report.unit_constant_term


def test_brion_peyre_identity():
    p = parse_poly("t^4 - 3t + 1")
    report = brion_peyre_q(p, 0, 0)
    assert report.q == p
    assert not report.nonnegative


def test_brion_peyre_pure_power():
    p = parse_poly("t^8*(t^12 - 1)/(t^4 - 1)")
    report = brion_peyre_q(p, 8, 0)
    assert report.q == parse_poly("t^8 + t^4 + 1")
    assert report.nonnegative and report.unit_constant_term


def test_brion_peyre_rejects_bad_data():
    with pytest.raises(ValueError):
        brion_peyre_q(parse_poly("t"), -1, 0)
    with pytest.raises(NotDivisible):
        brion_peyre_q(parse_poly("t^2 + 1"), 1, 0)


def test_horospherical_factor():
    out = horospherical_factor(parse_poly("(t - 1)*(t + 1)^2"), 1)
    assert out.base == parse_poly("(t + 1)^2")
    assert out.value_at_zero == 1
    out3 = horospherical_factor(parse_poly("(t - 1)^3*(t + 1)^3"), 3)
    assert out3.base == parse_poly("(t + 1)^3")
    assert out3.value_at_zero == 1
    p = parse_poly("t^5 + 7")
    assert horospherical_factor(p, 0).base == p


def test_horospherical_factor_failure():
    with pytest.raises(NotDivisible):
        horospherical_factor(parse_poly("t^2 + 1"), 1)


def test_record_validation():
    with pytest.raises(ValueError):
        PoincareRecord("bad", parse_poly("t^2"), parse_poly("t^3 - 1"))
    with pytest.raises(ValueError):
        PoincareRecord("bad", parse_poly("2t^2"), parse_poly("t^2 - 1"))
    rec = PoincareRecord("ok", parse_poly("t^2"), parse_poly("t^2 - 1"))
    assert rec.r_empty is None


def test_degree_laws():
    rec = PoincareRecord(
        "triple",
        p_gh=parse_poly("t^2*(t - 1)^2*(t + 1)^2"),
        p_gh_empty=parse_poly("(t - 1)^3*(t + 1)^3"),
        u_g=3,
        u_h=1,
    )
    report = check_degree_laws(rec)
    assert report.degree == 2 and report.expected_degree == 2
    assert report.constant_term_one and report.passed


def test_degree_laws_missing_data():
    rec = PoincareRecord("bare", parse_poly("t^2"), parse_poly("t^2 - 1"))
    with pytest.raises(MissingData):
        check_degree_laws(rec)


def test_inverse_degree():
    assert inverse_degree(parse_poly("1 - t^-8")) == 8
    assert inverse_degree(LaurentPoly.one()) == 0
    with pytest.raises(ValueError):
        inverse_degree(LaurentPoly.zero())


def test_monic_same_degree_ratio_has_unit_constant_term(rng: random.Random):
    # Whenever division is exact between monic polynomials of equal degree,
    # the ratio in the inverse variable has constant term 1.
    for _ in range(200):
        degree = rng.randint(1, 5)
        base = LaurentPoly(
            {degree: 1, **{k: rng.randint(-3, 3) for k in range(degree)}}
        )
        depth = rng.randint(0, 3)
        ratio = LaurentPoly(
            {0: 1, **{-k: rng.randint(-2, 2) for k in range(1, depth + 1)}}
        )
        member = base * ratio
        if member.leading_coefficient() != 1 or member.degree() != base.degree():
            continue
        computed = ratio_r(member, base)
        assert computed.constant_term == 1
