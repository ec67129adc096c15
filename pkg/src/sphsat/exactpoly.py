"""Exact univariate Laurent-polynomial and truncated-series arithmetic.

Two carriers live here:

* :class:`LaurentPoly` is a Laurent polynomial in one variable ``t`` with
  arbitrary-precision integer coefficients, stored sparsely as a map from
  exponent to nonzero coefficient.  Every polynomial identity checked by
  this package is decided in this ring, with no floating point anywhere.

* :class:`TruncSeries` is a series in ``t`` with rational coefficients,
  known exactly for all exponents up to a truncation order ``max_exp``
  (and exactly zero below ``min_exp``).  A series may also be *exact*
  (``max_exp is None``), in which case it is a finite Laurent polynomial
  with rational coefficients and no unknown tail.  Binary operations
  shrink the truncation order to the tightest sound bound.

All values are immutable; every operation returns a fresh value, so the
whole module is safe to use concurrently without locks.

The module also provides the canonical string form used by the catalog
files and the command line ("t^2 - 1", "1 - t^-2"), together with a small
expression parser that understands products, quotients, integer powers,
named integer parameters and bounded ``prod(i, lo, hi, body)`` products.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping


class ToolkitError(Exception):
    """Base class for all errors raised deliberately by this package."""


class NotDivisible(ToolkitError):
    """Exact division failed; ``remainder`` holds the obstruction."""

    def __init__(self, message: str, remainder: "LaurentPoly | None" = None):
        super().__init__(message)
        self.remainder = remainder


class NotASquare(ToolkitError):
    """A series constant term has no rational square root."""


class PolyParseError(ToolkitError):
    """A polynomial expression could not be parsed or evaluated."""


class TruncationError(ToolkitError):
    """A coefficient beyond the sound truncation window was requested."""


class LaurentPoly:
    """Integer-coefficient Laurent polynomial in one variable ``t``.

    The term map is canonical: no zero coefficient is ever stored, so two
    equal polynomials have identical maps and ``==`` is structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        data: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coeff in items:
            if not isinstance(exp, int) or isinstance(exp, bool):
                raise TypeError(f"exponent must be an integer, got {exp!r}")
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise TypeError(f"coefficient must be an integer, got {coeff!r}")
            if coeff:
                data[exp] = data.get(exp, 0) + coeff
                if not data[exp]:
                    del data[exp]
        self._terms = data

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def t(cls, exp: int = 1, coeff: int = 1) -> "LaurentPoly":
        """The monomial ``coeff * t**exp``."""
        return cls({exp: coeff})

    # -- inspection ----------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """A copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Largest exponent with nonzero coefficient."""
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self._terms)

    def min_exp(self) -> int:
        """Smallest exponent with nonzero coefficient."""
        if not self._terms:
            raise ValueError("the zero polynomial has no minimal exponent")
        return min(self._terms)

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    @property
    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def leading_coefficient(self) -> int:
        return self._terms[self.degree()]

    def num_terms(self) -> int:
        return len(self._terms)

    def dense_coefficients(self) -> list[int]:
        """Coefficients from ``min_exp`` through ``degree`` inclusive."""
        if not self._terms:
            return []
        lo, hi = self.min_exp(), self.degree()
        return [self._terms.get(k, 0) for k in range(lo, hi + 1)]

    def is_palindromic(self) -> bool:
        """Whether the dense coefficient list reads the same reversed."""
        coeffs = self.dense_coefficients()
        return coeffs == coeffs[::-1]

    def evaluate(self, x: int | Fraction) -> Fraction:
        """Exact value at ``x`` (nonzero if negative exponents occur)."""
        x = Fraction(x)
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            if exp < 0 and x == 0:
                raise ZeroDivisionError("negative exponent evaluated at zero")
            total += coeff * x**exp
        return total

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            val = out.get(exp, 0) + coeff
            if val:
                out[exp] = val
            else:
                out.pop(exp, None)
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = out
        return result

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = {exp: -coeff for exp, coeff in self._terms.items()}
        return result

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int) and not isinstance(other, bool):
            if not other:
                return LaurentPoly.zero()
            result = LaurentPoly.__new__(LaurentPoly)
            result._terms = {e: c * other for e, c in self._terms.items()}
            return result
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = e1 + e2
                val = out.get(exp, 0) + c1 * c2
                if val:
                    out[exp] = val
                else:
                    del out[exp]
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return exact_div(LaurentPoly.one(), self.__pow__(-k))
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = {e + k: c for e, c in self._terms.items()}
        return result

    def substitute_inverse(self) -> "LaurentPoly":
        """The polynomial with ``t`` replaced by ``t**-1``."""
        result = LaurentPoly.__new__(LaurentPoly)
        result._terms = {-e: c for e, c in self._terms.items()}
        return result

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Coefficientwise sum in canonical form."""
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Convolution product in canonical form."""
    return p * q


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """The unique ``r`` with ``r * q == p``, if it exists in Z[t, 1/t].

    Raises :class:`NotDivisible` when no exact integer-coefficient Laurent
    quotient exists; the exception carries the offending remainder (or the
    rational quotient obstruction) for reporting.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return LaurentPoly.zero()
    shift = p.min_exp() - q.min_exp()
    # Normalize both operands to honest polynomials with nonzero constant
    # term; the Laurent content moves into a final monomial shift.
    pd = _dense(p.shift(-p.min_exp()))
    qd = _dense(q.shift(-q.min_exp()))
    quot, rem = _poly_divmod(pd, qd)
    if any(rem):
        raise NotDivisible(
            f"({p}) is not divisible by ({q})",
            remainder=_from_dense(rem, 0),
        )
    if any(c.denominator != 1 for c in quot):
        raise NotDivisible(
            f"({p}) / ({q}) has non-integer coefficients",
            remainder=LaurentPoly.zero(),
        )
    return _from_dense(quot, shift)


def _dense(p: LaurentPoly) -> list[Fraction]:
    """Dense coefficient list of a polynomial with min_exp == 0."""
    out = [Fraction(0)] * (p.degree() + 1)
    for exp, coeff in p.terms.items():
        out[exp] = Fraction(coeff)
    return out


def _from_dense(coeffs: list[Fraction], shift: int) -> LaurentPoly:
    return LaurentPoly({i + shift: int(c) for i, c in enumerate(coeffs) if c})


def _poly_divmod(
    num: list[Fraction], den: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    """Long division of dense coefficient lists over the rationals."""
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    if len(num) <= dden:
        return [Fraction(0)], num
    quot = [Fraction(0)] * (len(num) - dden)
    for i in range(len(num) - dden - 1, -1, -1):
        factor = num[i + dden] / lead
        quot[i] = factor
        if factor:
            for j, dc in enumerate(den):
                num[i + j] -= factor * dc
    while len(num) > 1 and not num[-1]:
        num.pop()
    if num == [Fraction(0)]:
        num = []
    return quot, num


# ---------------------------------------------------------------------------
# Truncated series
# ---------------------------------------------------------------------------


class TruncSeries:
    """Rational-coefficient series in ``t``, exact up to ``max_exp``.

    ``max_exp is None`` marks an exact finite series (no unknown tail).
    For a truncated series every coefficient at exponent <= ``max_exp`` is
    known exactly; the tail above ``max_exp`` is unknown, and asking for it
    raises :class:`TruncationError`.  Coefficients below ``min_exp`` are
    exactly zero.
    """

    __slots__ = ("min_exp", "coeffs", "max_exp")

    def __init__(
        self,
        min_exp: int,
        coeffs: Iterable[Fraction | int],
        max_exp: int | None = None,
    ):
        vals = [Fraction(c) for c in coeffs]
        if max_exp is not None and len(vals) != max_exp - min_exp + 1:
            raise ValueError("coefficient list does not match the window")
        # Strip zeros at both ends; the window bookkeeping keeps soundness.
        while vals and not vals[0]:
            vals.pop(0)
            min_exp += 1
        if max_exp is None:
            while vals and not vals[-1]:
                vals.pop()
        self.min_exp = min_exp
        self.coeffs = tuple(vals)
        self.max_exp = max_exp

    # -- constructors -------------------------------------------------

    @classmethod
    def from_terms(
        cls, terms: Mapping[int, Fraction | int], max_exp: int | None = None
    ) -> "TruncSeries":
        live = {e: Fraction(c) for e, c in terms.items() if c}
        if max_exp is not None:
            live = {e: c for e, c in live.items() if e <= max_exp}
        if not live:
            return cls(0, [], None) if max_exp is None else cls(max_exp, [0], max_exp)
        lo = min(live)
        hi = max(live) if max_exp is None else max_exp
        return cls(lo, [live.get(k, Fraction(0)) for k in range(lo, hi + 1)], max_exp)

    @classmethod
    def from_poly(cls, p: LaurentPoly, max_exp: int | None = None) -> "TruncSeries":
        return cls.from_terms({e: Fraction(c) for e, c in p.terms.items()}, max_exp)

    @classmethod
    def constant(cls, c: Fraction | int, max_exp: int | None = None) -> "TruncSeries":
        return cls.from_terms({0: Fraction(c)}, max_exp)

    @classmethod
    def monomial(
        cls, c: Fraction | int, exp: int, max_exp: int | None = None
    ) -> "TruncSeries":
        return cls.from_terms({exp: Fraction(c)}, max_exp)

    @classmethod
    def zero(cls, max_exp: int | None = None) -> "TruncSeries":
        return cls.from_terms({}, max_exp)

    # -- inspection ----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.max_exp is None

    def known_terms(self) -> dict[int, Fraction]:
        return {
            self.min_exp + i: c for i, c in enumerate(self.coeffs) if c
        }

    def low_bound(self) -> int | None:
        """Exponent of the first known nonzero coefficient.

        For a series with no known nonzero coefficient this is the tightest
        sound lower bound on any nonzero term: ``max_exp + 1`` when
        truncated, and ``None`` (meaning the series is exactly zero) when
        exact.
        """
        for i, c in enumerate(self.coeffs):
            if c:
                return self.min_exp + i
        return None if self.max_exp is None else self.max_exp + 1

    def coefficient(self, exp: int) -> Fraction:
        if self.max_exp is not None and exp > self.max_exp:
            raise TruncationError(
                f"coefficient at t^{exp} lies beyond truncation order {self.max_exp}"
            )
        if exp < self.min_exp or exp > self.min_exp + len(self.coeffs) - 1:
            return Fraction(0)
        return self.coeffs[exp - self.min_exp]

    def is_zero(self) -> bool:
        """All known coefficients vanish (exactly zero when exact)."""
        return all(not c for c in self.coeffs)

    def agrees_with(self, other: "TruncSeries") -> bool:
        """Equality of all coefficients on the common sound window."""
        hi = _min_opt(self.max_exp, other.max_exp)
        lo = min(self.min_exp, other.min_exp)
        if hi is None:
            hi_eff = max(
                self.min_exp + len(self.coeffs) - 1,
                other.min_exp + len(other.coeffs) - 1,
                lo,
            )
        else:
            hi_eff = hi
        return all(
            self.coefficient(k) == other.coefficient(k) for k in range(lo, hi_eff + 1)
        )

    def to_poly(self) -> LaurentPoly:
        """Exact series with integer coefficients as a LaurentPoly."""
        if not self.is_exact:
            raise TruncationError("only an exact series converts to a polynomial")
        terms = {}
        for exp, c in self.known_terms().items():
            if c.denominator != 1:
                raise ValueError(f"coefficient {c} at t^{exp} is not an integer")
            terms[exp] = int(c)
        return LaurentPoly(terms)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return NotImplemented
        hi = _min_opt(self.max_exp, other.max_exp)
        terms: dict[int, Fraction] = dict(self.known_terms())
        for e, c in other.known_terms().items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return TruncSeries.from_terms(terms, hi)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + other.scale(-1)

    def __neg__(self) -> "TruncSeries":
        return self.scale(-1)

    def scale(self, c: Fraction | int) -> "TruncSeries":
        return TruncSeries.from_terms(
            {e: v * Fraction(c) for e, v in self.known_terms().items()}, self.max_exp
        )

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``t**k``."""
        return TruncSeries.from_terms(
            {e + k: v for e, v in self.known_terms().items()},
            None if self.max_exp is None else self.max_exp + k,
        )

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return NotImplemented
        lo1, lo2 = self.low_bound(), other.low_bound()
        if lo1 is None or lo2 is None:
            # One factor is exactly zero.
            return TruncSeries.zero(None)
        # Sound order of the product: the unknown tail of each factor first
        # pollutes the product at (max_exp + 1) + low_bound of the other.
        hi = _min_opt(
            None if self.max_exp is None else self.max_exp + lo2,
            None if other.max_exp is None else other.max_exp + lo1,
        )
        terms: dict[int, Fraction] = {}
        for e1, c1 in self.known_terms().items():
            for e2, c2 in other.known_terms().items():
                e = e1 + e2
                if hi is not None and e > hi:
                    continue
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return TruncSeries.from_terms(terms, hi)

    def __pow__(self, k: int) -> "TruncSeries":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = TruncSeries.constant(1, None)
        for _ in range(k):
            result = result * self
        return result

    def truncate(self, new_max: int) -> "TruncSeries":
        """Restrict knowledge to exponents <= ``new_max``."""
        if self.max_exp is not None and new_max > self.max_exp:
            raise TruncationError(
                f"cannot extend truncation order {self.max_exp} to {new_max}"
            )
        return TruncSeries.from_terms(
            {e: c for e, c in self.known_terms().items() if e <= new_max}, new_max
        )

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse to the sound truncation order.

        The lowest known coefficient must be nonzero.  Exact single-term
        series invert exactly; any other exact series must be truncated
        first, because its inverse has an infinite expansion.
        """
        lo = self.low_bound()
        if lo is None or self.coefficient(lo) == 0:
            raise ZeroDivisionError("series has no known nonzero leading coefficient")
        unit = self.shift(-lo)
        c0 = unit.coefficient(0)
        if unit.max_exp is None:
            if len(unit.known_terms()) == 1:
                return TruncSeries.monomial(1 / c0, -lo, None)
            raise TruncationError(
                "inverse of a multi-term exact series needs a truncation order; "
                "call .truncate(k) first"
            )
        order = unit.max_exp
        inv = [1 / c0]
        for n in range(1, order + 1):
            acc = Fraction(0)
            for i in range(1, n + 1):
                acc += unit.coefficient(i) * inv[n - i]
            inv.append(-acc / c0)
        return TruncSeries(0, inv, order).shift(-lo)

    def sqrt(self) -> "TruncSeries":
        """Square root with positive constant term, to the same order.

        Requires a truncated series supported in nonnegative exponents
        whose constant term is a nonzero rational square.
        """
        if self.max_exp is None:
            raise TruncationError(
                "square root of an exact series needs a truncation order; "
                "call .truncate(k) first"
            )
        lo = self.low_bound()
        if lo is not None and lo < 0:
            raise NotASquare("series has nonzero coefficients at negative exponents")
        c0 = self.coefficient(0)
        root0 = _fraction_sqrt(c0)
        if root0 is None:
            raise NotASquare(f"constant term {c0} is not a nonzero rational square")
        order = self.max_exp
        out = [root0]
        for n in range(1, order + 1):
            acc = Fraction(0)
            for i in range(1, n):
                acc += out[i] * out[n - i]
            out.append((self.coefficient(n) - acc) / (2 * root0))
        return TruncSeries(0, out, order)

    # -- comparison / display -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.max_exp == other.max_exp
            and self.known_terms() == other.known_terms()
        )

    def __hash__(self) -> int:
        return hash((self.max_exp, frozenset(self.known_terms().items())))

    def __str__(self) -> str:
        parts = []
        for e, c in sorted(self.known_terms().items()):
            parts.append(_format_series_term(c, e, first=not parts))
        body = "".join(parts) if parts else "0"
        if self.max_exp is None:
            return body
        return f"{body} + O(t^{self.max_exp + 1})"

    def __repr__(self) -> str:
        return f"TruncSeries({str(self)!r})"


def _min_opt(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a positive rational, or None."""
    if x <= 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def expand_inverse_t_minus_1(order: int) -> TruncSeries:
    """The partial expansion of 1/(t - 1) at infinity, through depth ``order``.

    Returns the exact finite sum with coefficient 1 at every exponent
    -1 ... -order and 0 elsewhere.  Multiplying by (t - 1) therefore gives
    1 minus a single error term at exponent -order.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    return TruncSeries.from_terms({-j: Fraction(1) for j in range(1, order + 1)})


def series_sqrt(s: TruncSeries) -> TruncSeries:
    """Square root of a truncated series with square constant term."""
    return s.sqrt()


# ---------------------------------------------------------------------------
# Canonical rendering and parsing
# ---------------------------------------------------------------------------


def format_poly(p: LaurentPoly) -> str:
    """Canonical string form: descending exponents, unit coefficients elided."""
    if p.is_zero():
        return "0"
    parts = []
    for exp in sorted(p.terms, reverse=True):
        coeff = p.coeff(exp)
        if parts:
            sign = " - " if coeff < 0 else " + "
        else:
            sign = "-" if coeff < 0 else ""
        mag = abs(coeff)
        if exp == 0:
            body = str(mag)
        else:
            var = "t" if exp == 1 else f"t^{exp}"
            body = var if mag == 1 else f"{mag}{var}"
        parts.append(sign + body)
    return "".join(parts)


def _format_series_term(c: Fraction, exp: int, first: bool) -> str:
    sign = ("-" if c < 0 else "") if first else (" - " if c < 0 else " + ")
    mag = abs(c)
    if exp == 0:
        return f"{sign}{mag}"
    var = "t" if exp == 1 else f"t^{exp}"
    if mag == 1:
        return f"{sign}{var}"
    return f"{sign}{mag}*{var}"


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == pos:
            if text[pos:].strip():
                raise PolyParseError(
                    f"unexpected character {text[pos:].strip()[0]!r} in {text!r}"
                )
            break
        pos = match.end()
        if match.group("num"):
            tokens.append(("num", match.group("num")))
        elif match.group("name"):
            tokens.append(("name", match.group("name")))
        else:
            tokens.append(("op", match.group("op")))
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial expression grammar.

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/')? unary)*      adjacency means product
    unary  := '-' unary | atom ('^' unary)?
    atom   := number | name | '(' expr ')' | 'prod' '(' name ',' e ',' e ',' e ')'

    Powers evaluate their exponent as a constant integer; names other than
    ``t`` resolve through the environment.
    """

    def __init__(self, tokens: list[tuple[str, str]], env: Mapping[str, int], text: str):
        self.tokens = tokens
        self.env = dict(env)
        self.pos = 0
        self.text = text

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise PolyParseError(f"unexpected end of expression in {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, op: str) -> None:
        tok = self.take()
        if tok != ("op", op):
            raise PolyParseError(f"expected {op!r} in {self.text!r}, got {tok[1]!r}")

    def parse(self) -> LaurentPoly:
        value = self.expr()
        if self.peek() is not None:
            raise PolyParseError(
                f"trailing input {self.peek()[1]!r} in {self.text!r}"
            )
        return value

    def expr(self) -> LaurentPoly:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPoly:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                op = self.take()[1]
                rhs = self.unary()
                value = value * rhs if op == "*" else exact_div(value, rhs)
            elif tok is not None and (tok[0] in ("num", "name") or tok == ("op", "(")):
                value = value * self.unary()
            else:
                return value

    def unary(self) -> LaurentPoly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        value = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exponent = self._int(self.unary())
            value = value**exponent
        return value

    def atom(self) -> LaurentPoly:
        kind, text = self.take()
        if kind == "num":
            return LaurentPoly.const(int(text))
        if kind == "name":
            if text == "t":
                return LaurentPoly.t()
            if text == "prod":
                return self.prod()
            if text in self.env:
                return LaurentPoly.const(self.env[text])
            raise PolyParseError(f"unknown name {text!r} in {self.text!r}")
        if (kind, text) == ("op", "("):
            value = self.expr()
            self.expect(")")
            return value
        raise PolyParseError(f"unexpected token {text!r} in {self.text!r}")

    def prod(self) -> LaurentPoly:
        self.expect("(")
        kind, var = self.take()
        if kind != "name":
            raise PolyParseError(f"prod needs a loop variable in {self.text!r}")
        self.expect(",")
        lo = self._int(self.expr())
        self.expect(",")
        hi = self._int(self.expr())
        self.expect(",")
        body_start = self.pos
        depth = 0
        while True:
            tok = self.peek()
            if tok is None:
                raise PolyParseError(f"unterminated prod in {self.text!r}")
            if tok == ("op", "(") :
                depth += 1
            elif tok == ("op", ")"):
                if depth == 0:
                    break
                depth -= 1
            self.pos += 1
        body = self.tokens[body_start : self.pos]
        self.expect(")")
        value = LaurentPoly.one()
        for i in range(lo, hi + 1):
            sub = _Parser(body, {**self.env, var: i}, self.text)
            value = value * sub.parse()
        return value

    def _int(self, p: LaurentPoly) -> int:
        if p.is_zero():
            return 0
        if p.num_terms() == 1 and p.min_exp() == 0:
            return p.constant_term
        raise PolyParseError(f"expected an integer expression in {self.text!r}")


def parse_poly(text: str, env: Mapping[str, int] | None = None) -> LaurentPoly:
    """Parse the expression grammar into a Laurent polynomial.

    ``env`` supplies integer values for named parameters such as ``n``.
    Quotients must clear exactly or :class:`NotDivisible` is raised.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial expression")
    return _Parser(tokens, env or {}, text).parse()


def parse_int(text: str, env: Mapping[str, int] | None = None) -> int:
    """Parse an expression that must evaluate to a plain integer."""
    poly = parse_poly(text, env)
    if poly.is_zero():
        return 0
    if poly.num_terms() == 1 and poly.min_exp() == 0:
        return poly.constant_term
    raise PolyParseError(f"expression {text!r} is not an integer")
