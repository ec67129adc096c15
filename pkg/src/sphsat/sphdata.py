"""Homogeneous spherical data and their two combinatorial transforms.

A :class:`SphericalDatum` packages, in coordinates, the invariants that
pin down a spherical subgroup up to conjugation: the weight lattice M
(here Z^r with the dot pairing), the defining weight vectors of the
valuation cone together with their simple-root supports, the set S^p of
simple roots not met by any color, and the list of relevant colors with
their lattice images rho.

Two transforms act on a datum:

* :func:`satellite_datum` restricts the defining vectors to a subset I
  and keeps exactly the colors whose simple-root set meets the support of
  a surviving vector, leaving M, S^p and every surviving rho untouched.

* :func:`closed_orbit_datum` additionally cuts the lattice: given
  generators of a subcone of the valuation cone, M shrinks to the
  saturated sublattice orthogonal to all generators, the surviving
  defining vectors are rewritten in the new coordinates, and the rho
  values are pushed down the saturated quotient of the dual lattice.

A note on the color filter.  The membership rule for a color intersects
its simple-root set J with a set of defining vectors, which only makes
sense through the supports; every defining vector therefore carries an
explicit support in its input data, and the filter tests J against the
union of supports of the chosen vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .exactpoly import ToolkitError
from .intlattice import (
    dot,
    express_in_basis,
    is_primitive,
    kernel_basis,
    rational_rank,
)
from .latcone import PairedLattice, ValuationCone, contains
from .rootsys import RootSystem, parse_root_system

IntVector = tuple[int, ...]


class InconsistentColor(ToolkitError):
    """A color row violates the weight-matrix constraints."""


class BadSubset(ToolkitError):
    """A satellite subset references unknown defining vectors."""


class DegenerateCone(ToolkitError):
    """Proposed cone generators leave the valuation cone."""


class DatumError(ToolkitError):
    """A spherical datum violates a structural invariant."""


# ---------------------------------------------------------------------------
# Color classification from the weight matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColorMatrix:
    """Rows of weight-coefficient vectors, one per color, entries in {0,1,2}."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows:
            width = len(self.rows[0])
            for i, row in enumerate(self.rows):
                if len(row) != width:
                    raise InconsistentColor(f"row {i + 1} has length {len(row)}, not {width}")
                for j, entry in enumerate(row):
                    if entry not in (0, 1, 2):
                        raise InconsistentColor(
                            f"entry {entry} at row {i + 1}, column {j + 1} "
                            "is outside {0, 1, 2}"
                        )
        for j, total in enumerate(self.column_sums()):
            if total not in (0, 1, 2):
                raise InconsistentColor(
                    f"column {j + 1} sums to {total}, outside {{0, 1, 2}}"
                )

    def column_sums(self) -> tuple[int, ...]:
        if not self.rows:
            return ()
        return tuple(sum(col) for col in zip(*self.rows))


def classify_color(row: Sequence[int], column_sums: Sequence[int]) -> str:
    """Type of one color row: "2a", "a" or "b".

    A row with an entry 2 must vanish elsewhere and is of type 2a.
    Otherwise the row marks a subset J by its entries 1, and the column
    sums over J decide: all 2 means type a, all 1 means type b, anything
    mixed is invalid input.
    """
    if any(entry not in (0, 1, 2) for entry in row):
        raise InconsistentColor(f"row entries outside {{0, 1, 2}}: {tuple(row)}")
    twos = [j for j, entry in enumerate(row) if entry == 2]
    if twos:
        if sum(row) != 2:
            raise InconsistentColor(
                f"a weight-2 entry must be the only nonzero one: {tuple(row)}"
            )
        return "2a"
    j_set = [j for j, entry in enumerate(row) if entry == 1]
    if not j_set:
        raise InconsistentColor("a color row cannot be identically zero")
    sums = {column_sums[j] for j in j_set}
    if sums == {2}:
        return "a"
    if sums == {1}:
        return "b"
    raise InconsistentColor(
        f"mixed column sums {sorted(sums)} over the support of {tuple(row)}"
    )


def compute_s_p(matrix: ColorMatrix) -> frozenset[int]:
    """1-based indices of simple roots met by no color (zero column sum)."""
    return frozenset(
        j + 1 for j, total in enumerate(matrix.column_sums()) if total == 0
    )


# ---------------------------------------------------------------------------
# The datum itself
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SphericalRoot:
    """A named defining weight vector with its simple-root support."""

    name: str
    vector: IntVector
    support: frozenset[int]

    def __post_init__(self):
        if not self.support:
            raise DatumError(f"defining vector {self.name!r} has empty support")


@dataclass(frozen=True)
class Color:
    """A relevant color: simple-root set J and lattice image rho."""

    id: str
    j_set: frozenset[int]
    rho: IntVector
    declared_type: str = "a"

    def __post_init__(self):
        if not self.j_set:
            raise InconsistentColor(f"color {self.id!r} has empty simple-root set")
        if self.declared_type not in ("2a", "a", "b"):
            raise InconsistentColor(
                f"color {self.id!r} has unknown type {self.declared_type!r}"
            )
        if self.declared_type == "2a" and len(self.j_set) != 1:
            raise InconsistentColor(
                f"type 2a color {self.id!r} must have a single simple root"
            )


@dataclass(frozen=True)
class SphericalDatum:
    """The quadruple (M, defining vectors, S^p, colors) in coordinates."""

    ambient: RootSystem
    lattice: PairedLattice
    spherical_roots: tuple[SphericalRoot, ...]
    s_p: frozenset[int]
    colors_a: tuple[Color, ...]

    def __post_init__(self):
        r = self.lattice.rank
        names = [root.name for root in self.spherical_roots]
        if len(set(names)) != len(names):
            raise DatumError(f"duplicate defining-vector names in {names}")
        simple = set(self.ambient.simple_root_indices())
        for root in self.spherical_roots:
            if len(root.vector) != r:
                raise DatumError(
                    f"vector of {root.name!r} has length {len(root.vector)}, not {r}"
                )
            if not is_primitive(root.vector):
                raise DatumError(f"vector of {root.name!r} is not primitive")
            if not root.support <= simple:
                raise DatumError(
                    f"support of {root.name!r} mentions unknown simple roots "
                    f"{sorted(root.support - simple)}"
                )
        vectors = [root.vector for root in self.spherical_roots]
        if vectors and rational_rank(vectors) != len(vectors):
            raise DatumError("defining vectors are linearly dependent")
        full_support = self.root_support(names)
        used = set()
        for color in self.colors_a:
            if not color.j_set <= simple:
                raise DatumError(
                    f"color {color.id!r} mentions unknown simple roots "
                    f"{sorted(color.j_set - simple)}"
                )
            if len(color.rho) != r:
                raise DatumError(
                    f"rho of color {color.id!r} has length {len(color.rho)}, not {r}"
                )
            if not color.j_set & full_support:
                raise DatumError(
                    f"color {color.id!r} meets no defining-vector support"
                )
            used |= color.j_set
        if self.s_p & used:
            raise DatumError(
                f"S^p overlaps color supports at {sorted(self.s_p & used)}"
            )
        ids = [color.id for color in self.colors_a]
        if len(set(ids)) != len(ids):
            raise DatumError(f"duplicate color ids in {ids}")

    # -- views ----------------------------------------------------------

    @property
    def root_names(self) -> tuple[str, ...]:
        return tuple(root.name for root in self.spherical_roots)

    def root_by_name(self, name: str) -> SphericalRoot:
        for root in self.spherical_roots:
            if root.name == name:
                return root
        raise BadSubset(f"unknown defining vector {name!r}")

    def root_support(self, names: Iterable[str]) -> frozenset[int]:
        """Union of simple-root supports over the named defining vectors."""
        out: frozenset[int] = frozenset()
        for name in names:
            out |= self.root_by_name(name).support
        return out

    def valuation_cone(self) -> ValuationCone:
        return ValuationCone(
            self.lattice, tuple(root.vector for root in self.spherical_roots)
        )

    def canonical_key(self):
        return (
            self.ambient.descriptor(),
            self.lattice.rank,
            tuple(sorted(
                (r.name, r.vector, tuple(sorted(r.support)))
                for r in self.spherical_roots
            )),
            tuple(sorted(self.s_p)),
            tuple(sorted(
                (c.id, tuple(sorted(c.j_set)), c.rho, c.declared_type)
                for c in self.colors_a
            )),
        )

    def same_datum(self, other: "SphericalDatum") -> bool:
        """Structural equality on canonical forms."""
        return self.canonical_key() == other.canonical_key()


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------


def satellite_datum(datum: SphericalDatum, names: Iterable[str]) -> SphericalDatum:
    """The datum attached to a subset of the defining vectors.

    Keeps the lattice, S^p and rho values, restricts the defining vectors
    to the subset and filters the colors to those whose simple-root set
    meets the support of a surviving vector.
    """
    chosen = list(dict.fromkeys(names))
    known = set(datum.root_names)
    unknown = [n for n in chosen if n not in known]
    if unknown:
        raise BadSubset(f"unknown defining vectors {unknown}")
    keep = set(chosen)
    surviving = tuple(r for r in datum.spherical_roots if r.name in keep)
    live_support = datum.root_support(keep)
    colors = tuple(c for c in datum.colors_a if c.j_set & live_support)
    return replace(datum, spherical_roots=surviving, colors_a=colors)


def count_satellites(datum: SphericalDatum) -> int:
    """One satellite per subset of the defining vectors."""
    return 2 ** len(datum.spherical_roots)


def closed_orbit_datum(
    datum: SphericalDatum, cone_generators: Sequence[Sequence[int]]
) -> SphericalDatum:
    """The datum of the closed orbit of the subcone spanned by the generators.

    The generators must lie in the valuation cone.  The new lattice is the
    saturated sublattice of M orthogonal to every generator, written in a
    kernel basis; defining vectors that vanish on all generators survive
    (in the new coordinates), colors are filtered as for a satellite, and
    rho values are projected by pairing against the kernel basis, which
    realizes the saturated quotient of the dual lattice.
    """
    cone = datum.valuation_cone()
    gens = [tuple(int(x) for x in g) for g in cone_generators]
    for g in gens:
        if not contains(cone, g):
            raise DegenerateCone(f"generator {g} is outside the valuation cone")
    if not gens:
        return datum
    basis = kernel_basis(gens, datum.lattice.rank)
    new_rank = len(basis)
    surviving = []
    for root in datum.spherical_roots:
        if all(dot(root.vector, g) == 0 for g in gens):
            coords = express_in_basis(basis, root.vector)
            surviving.append(replace(root, vector=coords))
    live_support: frozenset[int] = frozenset()
    for root in surviving:
        live_support |= root.support
    colors = tuple(
        replace(c, rho=tuple(dot(b, c.rho) for b in basis))
        for c in datum.colors_a
        if c.j_set & live_support
    )
    return SphericalDatum(
        ambient=datum.ambient,
        lattice=PairedLattice(new_rank),
        spherical_roots=tuple(surviving),
        s_p=datum.s_p,
        colors_a=colors,
    )


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def datum_to_json(datum: SphericalDatum) -> dict:
    return {
        "ambient": datum.ambient.descriptor(),
        "lattice_rank": datum.lattice.rank,
        "spherical_roots": [
            {
                "name": root.name,
                "vector": list(root.vector),
                "support": sorted(root.support),
            }
            for root in datum.spherical_roots
        ],
        "s_p": sorted(datum.s_p),
        "colors_a": [
            {"id": color.id, "j_set": sorted(color.j_set), "rho": list(color.rho)}
            for color in datum.colors_a
        ],
    }


def datum_from_json(data: dict) -> SphericalDatum:
    if not isinstance(data, dict):
        raise DatumError("datum document must be a JSON object")

    def field(name):
        if name not in data:
            raise DatumError(f"datum document is missing field {name!r}")
        return data[name]

    try:
        ambient = parse_root_system(str(field("ambient")))
        rank = int(field("lattice_rank"))
        roots = tuple(
            SphericalRoot(
                name=str(entry["name"]),
                vector=tuple(int(x) for x in entry["vector"]),
                support=frozenset(int(x) for x in entry["support"]),
            )
            for entry in field("spherical_roots")
        )
        s_p = frozenset(int(x) for x in field("s_p"))
        colors = tuple(
            Color(
                id=str(entry["id"]),
                j_set=frozenset(int(x) for x in entry["j_set"]),
                rho=tuple(int(x) for x in entry["rho"]),
            )
            for entry in field("colors_a")
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DatumError(f"bad datum document: {exc}") from exc
    return SphericalDatum(
        ambient=ambient,
        lattice=PairedLattice(rank),
        spherical_roots=roots,
        s_p=s_p,
        colors_a=colors,
    )


def load_datum(path: str) -> SphericalDatum:
    with open(path, "r", encoding="utf-8") as handle:
        return datum_from_json(json.load(handle))
