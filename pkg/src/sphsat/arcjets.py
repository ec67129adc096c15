"""Truncated-series matrices acting on projective point curves.

This module checks, at desk scale, that explicit curves of group elements
fix given points of the projective line over the Laurent-series field and
that their limits at t = 0 land where expected.  Matrices have
:class:`~sphsat.exactpoly.TruncSeries` entries sharing one truncation
order; points are homogeneous coordinate vectors of series.

The concrete witness family implemented here fixes the two coordinate
curves [0 : 1/t] and [t : 1/t]: it is the lower-triangular curve

    [[a(t), 0], [c(t), a(t)^-1]]

whose diagonal entry solves a^2 - t^2 c a - 1 = 0, taken as

    a(t) = (t^2 c(t) + sign * sqrt(t^4 c(t)^2 + 4)) / 2

with the square root normalized to constant term +2.  By construction the
determinant is 1 and a - a^-1 = t^2 c identically, and the limit at zero
is [[sign, 0], [c(0), sign]] with sign^2 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactpoly import ToolkitError, TruncSeries

DEFAULT_ORDER = 8


class PoleAtZero(ToolkitError):
    """A matrix entry has a genuine pole at t = 0; names the entry."""


class TruncationExhausted(ToolkitError):
    """All coefficients of a result fell outside the tracked window."""


@dataclass(frozen=True)
class ProjectivePointCurve:
    """Homogeneous coordinates over the series ring, not identically zero."""

    coords: tuple[TruncSeries, ...]

    def __post_init__(self):
        if not self.coords:
            raise ValueError("a projective point needs at least one coordinate")
        if all(s.is_zero() for s in self.coords):
            raise ValueError("all homogeneous coordinates vanish to truncation order")

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class SeriesMatrix:
    """Square matrix of series entries sharing a common truncation order."""

    entries: tuple[tuple[TruncSeries, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("matrix is not square")
        orders = [
            e.max_exp for row in self.entries for e in row if e.max_exp is not None
        ]
        if orders and len(set(orders)) > 1:
            # Re-normalization happens in the constructor helpers; reaching
            # here means rows were assembled by hand with mixed orders.
            raise ValueError(f"entries carry mixed truncation orders {sorted(set(orders))}")

    @classmethod
    def of(cls, rows: Sequence[Sequence[TruncSeries]]) -> "SeriesMatrix":
        """Build a matrix, clamping all entries to the least truncation order."""
        orders = [e.max_exp for row in rows for e in row if e.max_exp is not None]
        if orders:
            common = min(orders)
            rows = [[e.truncate(common) for e in row] for row in rows]
        return cls(tuple(tuple(row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    def order(self) -> int | None:
        for row in self.entries:
            for e in row:
                if e.max_exp is not None:
                    return e.max_exp
        return None


def apply(m: SeriesMatrix, p: ProjectivePointCurve) -> ProjectivePointCurve:
    """Matrix times homogeneous coordinate vector over the series ring."""
    if m.size != len(p):
        raise ValueError(f"matrix size {m.size} does not match point size {len(p)}")
    coords = []
    for row in m.entries:
        acc = TruncSeries.zero()
        for entry, coord in zip(row, p.coords):
            acc = acc + entry * coord
        coords.append(acc)
    if all(s.is_zero() for s in coords) and any(not s.is_exact for s in coords):
        # Every known coefficient vanished and an unknown tail remains; the
        # image cannot be certified to be a projective point.
        raise TruncationExhausted(
            "all result coefficients fell outside the tracked window"
        )
    return ProjectivePointCurve(tuple(coords))


def projectively_fixes(m: SeriesMatrix, p: ProjectivePointCurve) -> bool:
    """Whether the image of ``p`` is proportional to ``p``, to truncation.

    Defined for two homogeneous coordinates: the 2 x 2 determinant of the
    image against the original must vanish identically as far as it is
    known.
    """
    if len(p) != 2:
        raise ValueError("projective fixing is defined for two coordinates")
    image = apply(m, p)
    det = image.coords[0] * p.coords[1] - image.coords[1] * p.coords[0]
    return det.is_zero()


def limit_at_zero(m: SeriesMatrix) -> list[list[Fraction]]:
    """Matrix of constant terms, defined when no entry has a pole.

    Raises :class:`PoleAtZero` naming the first entry with a nonzero
    coefficient at a negative exponent.
    """
    out = []
    for i, row in enumerate(m.entries):
        out_row = []
        for j, entry in enumerate(row):
            for exp, coeff in sorted(entry.known_terms().items()):
                if exp < 0 and coeff:
                    raise PoleAtZero(
                        f"entry ({i + 1}, {j + 1}) has {coeff} * t^{exp}"
                    )
            out_row.append(entry.coefficient(0))
        out.append(out_row)
    return out


def in_limit_group(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """Membership in {[[a, 0], [c, a]] : a^2 == 1} for a 2 x 2 limit."""
    (a, b), (c, d) = matrix
    return b == 0 and a == d and a * a == 1


def fixed_point_curves(order: int = DEFAULT_ORDER) -> tuple[ProjectivePointCurve, ...]:
    """The two coordinate curves [0 : 1/t] and [t : 1/t], exactly."""
    zero = TruncSeries.zero()
    t = TruncSeries.monomial(1, 1)
    t_inv = TruncSeries.monomial(1, -1)
    del order  # The curves are exact monomials; no truncation needed.
    return (
        ProjectivePointCurve((zero, t_inv)),
        ProjectivePointCurve((t, t_inv)),
    )


def isotropy_witness_series(
    sign: int, c: TruncSeries, order: int = DEFAULT_ORDER
) -> SeriesMatrix:
    """Witness curve for an arbitrary series parameter c(t).

    Solves the diagonal entry from the quadratic relation and assembles
    the lower-triangular matrix; ``sign`` selects the branch of the square
    root and becomes the limit's diagonal value.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if order < 4:
        raise ValueError(f"order must be >= 4, got {order}")
    t2 = TruncSeries.monomial(1, 2)
    four = TruncSeries.constant(4)
    radicand = (four + (t2 * c) * (t2 * c)).truncate(order)
    root = radicand.sqrt()
    a = (t2 * c + root.scale(sign)).scale(Fraction(1, 2))
    d = a.inverse()
    zero = TruncSeries.zero(order)
    return SeriesMatrix.of([[a, zero], [c.truncate(order), d]])


def isotropy_witness(
    sign: int, c0: Fraction | int, order: int = DEFAULT_ORDER
) -> SeriesMatrix:
    """Witness curve with constant parameter c0.

    The result projectively fixes both coordinate curves and its limit at
    zero is [[sign, 0], [c0, sign]].
    """
    return isotropy_witness_series(
        sign, TruncSeries.constant(Fraction(c0)), order
    )
