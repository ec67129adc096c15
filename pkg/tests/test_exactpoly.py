import random
from fractions import Fraction

import pytest

from sphsat.exactpoly import (
    LaurentPoly,
    NotASquare,
    PolyParseError,
    TruncationError,
    TruncSeries,
    exact_div,
    expand_inverse_t_minus_1,
    format_poly,
    parse_poly,
    series_sqrt,
)
from conftest import random_poly

T = LaurentPoly.t()
ONE = LaurentPoly.one()


def test_add_cancellation():
    assert (T - ONE) + ONE == T


def test_add_identity():
    p = parse_poly("3t^2 - t + 7")
    assert LaurentPoly.zero() + p == p


def test_add_merges_terms():
    assert parse_poly("t^2 - 1") + parse_poly("t^2 + 1") == parse_poly("2t^2")


def test_mul_difference_of_squares():
    assert (T - ONE) * (T + ONE) == parse_poly("t^2 - 1")


def test_mul_geometric_telescoping():
    assert (T - ONE) * parse_poly("1 + t + t^2") == parse_poly("t^3 - 1")


def test_mul_laurent_exponents():
    assert LaurentPoly.t(-1) * T == ONE


def test_exact_div_inverse_variable():
    assert exact_div(parse_poly("t^2 - 1"), parse_poly("t^2")) == parse_poly("1 - t^-2")


def test_exact_div_by_one():
    p = random_poly(random.Random(5))
    assert exact_div(p, ONE) == p


def test_exact_div_reconstructs_product():
    p = parse_poly("(t - 1)*(t + 1)^3*(t^2 - t)")
    q = parse_poly("(t + 1)*(t^2 - t)")
    quotient = exact_div(p, q)
    assert quotient * q == p


def test_exact_div_failure_carries_remainder():
    from sphsat.exactpoly import NotDivisible

    with pytest.raises(NotDivisible) as info:
        exact_div(parse_poly("t^2 + 1"), T + ONE)
    assert info.value.remainder is not None


def test_exact_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        exact_div(ONE, LaurentPoly.zero())


def test_ring_axioms_random():
    rng = random.Random(101)
    for _ in range(1000):
        p, q, r = (random_poly(rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r


def test_div_mul_round_trip_random():
    rng = random.Random(202)
    done = 0
    while done < 1000:
        p = random_poly(rng)
        q = random_poly(rng)
        if q.is_zero():
            continue
        assert exact_div(p * q, q) == p
        done += 1


def test_pow_negative_monomial():
    assert T**-2 == LaurentPoly.t(-2)
    assert parse_poly("t^-2") == LaurentPoly.t(-2)


def test_format_canonical():
    assert format_poly(parse_poly("t^2 - 1")) == "t^2 - 1"
    assert format_poly(parse_poly("1 - t^-2")) == "1 - t^-2"
    assert format_poly(LaurentPoly.zero()) == "0"
    assert format_poly(parse_poly("-2t^3 + t")) == "-2t^3 + t"


def test_parse_format_round_trip():
    rng = random.Random(303)
    for _ in range(300):
        p = random_poly(rng)
        assert parse_poly(format_poly(p)) == p


def test_parse_env_and_prod():
    assert parse_poly("t^(n-1)", {"n": 4}) == LaurentPoly.t(3)
    assert parse_poly("prod(i, 1, 3, t^i + 1)") == parse_poly(
        "(t + 1)*(t^2 + 1)*(t^3 + 1)"
    )
    assert parse_poly("prod(i, 1, 0, t + 1)") == ONE


def test_parse_errors():
    with pytest.raises(PolyParseError):
        parse_poly("t + q")
    with pytest.raises(PolyParseError):
        parse_poly("t +")
    with pytest.raises(PolyParseError):
        parse_poly("t ^ t")
    with pytest.raises(PolyParseError):
        parse_poly("(t + 1")
    with pytest.raises(PolyParseError):
        parse_poly("")


def test_evaluate_and_palindrome():
    p = parse_poly("(t + 1)^2")
    assert p.evaluate(1) == 4
    assert p.is_palindromic()
    assert not parse_poly("t^2 + t + 2").is_palindromic()


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------


def test_expand_inverse_shape():
    assert expand_inverse_t_minus_1(3).known_terms() == {
        -1: Fraction(1),
        -2: Fraction(1),
        -3: Fraction(1),
    }
    assert expand_inverse_t_minus_1(1).known_terms() == {-1: Fraction(1)}
    with pytest.raises(ValueError):
        expand_inverse_t_minus_1(0)


def test_expand_inverse_round_trip():
    t_minus_1 = TruncSeries.from_poly(T - ONE)
    for order in range(1, 13):
        product = t_minus_1 * expand_inverse_t_minus_1(order)
        assert product.known_terms() == {0: Fraction(1), -order: Fraction(-1)}


def test_series_sqrt_one():
    one = TruncSeries.constant(1, 6)
    assert series_sqrt(one).known_terms() == {0: Fraction(1)}


def test_series_sqrt_one_plus_t():
    s = TruncSeries.from_terms({0: 1, 1: 1}, 8)
    root = series_sqrt(s)
    assert root.coefficient(0) == 1
    assert root.coefficient(1) == Fraction(1, 2)
    assert root.coefficient(2) == Fraction(-1, 8)
    assert (root * root - s).is_zero()


def test_series_sqrt_witness_radicand():
    c0 = Fraction(5)
    s = TruncSeries.from_terms({0: 4, 4: c0 * c0}, 8)
    root = series_sqrt(s)
    assert root.coefficient(0) == 2
    assert root.coefficient(4) == c0 * c0 / 4
    assert (root * root - s).is_zero()


def test_series_sqrt_random_round_trip():
    rng = random.Random(404)
    for _ in range(50):
        terms = {0: Fraction(1)}
        for exp in range(1, 7):
            terms[exp] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        s = TruncSeries.from_terms(terms, 6)
        root = series_sqrt(s)
        assert (root * root - s).is_zero()


def test_series_sqrt_rejects_non_square():
    with pytest.raises(NotASquare):
        series_sqrt(TruncSeries.from_terms({0: 2, 1: 1}, 4))
    with pytest.raises(NotASquare):
        series_sqrt(TruncSeries.from_terms({1: 1}, 4))
    with pytest.raises(NotASquare):
        series_sqrt(TruncSeries.from_terms({-1: 1, 0: 1}, 4))


def test_series_truncation_guard():
    s = TruncSeries.from_terms({0: 1, 1: 1}, 3)
    assert s.coefficient(3) == 0
    with pytest.raises(TruncationError):
        s.coefficient(4)
    with pytest.raises(TruncationError):
        s.truncate(5)


def test_series_mul_window_is_tight():
    # (1 + O(t^3)) * (t^2 + O(t^5)): products of the unknown tails first
    # touch t^5, so the result is sound through t^4.
    a = TruncSeries.from_terms({0: 1}, 2)
    b = TruncSeries.from_terms({2: 1}, 4)
    assert (a * b).max_exp == 4


def test_series_inverse_round_trip():
    rng = random.Random(505)
    for _ in range(50):
        terms = {0: Fraction(rng.choice([1, -1, 2, 3]))}
        for exp in range(1, 8):
            terms[exp] = Fraction(rng.randint(-4, 4))
        s = TruncSeries.from_terms(terms, 7)
        assert (s * s.inverse() - TruncSeries.constant(1)).is_zero()


def test_series_inverse_shifts_valuation():
    s = TruncSeries.from_terms({2: 1, 3: 1}, 6)
    inv = s.inverse()
    assert inv.coefficient(-2) == 1
    assert (s * inv - TruncSeries.constant(1)).is_zero()


def test_series_inverse_needs_truncation_for_exact():
    from sphsat.exactpoly import TruncationError as TErr

    exact = TruncSeries.from_poly(T + ONE)
    with pytest.raises(TErr):
        exact.inverse()
    # Exact monomials do invert exactly.
    assert TruncSeries.monomial(2, 3).inverse().known_terms() == {
        -3: Fraction(1, 2)
    }


def test_series_exact_arithmetic_stays_exact():
    a = TruncSeries.from_poly(parse_poly("t^2 - 1"))
    b = TruncSeries.from_poly(T + ONE)
    assert (a * b).is_exact
    assert (a * b).to_poly() == parse_poly("(t^2 - 1)*(t + 1)")


def test_series_agrees_with():
    a = TruncSeries.from_terms({0: 1, 1: 2}, 4)
    b = TruncSeries.from_terms({0: 1, 1: 2, 5: 9}, 5)
    assert a.agrees_with(b)
    c = TruncSeries.from_terms({0: 1, 1: 3}, 4)
    assert not a.agrees_with(c)
