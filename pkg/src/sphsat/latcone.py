"""Paired integer lattices, the cosimplicial valuation cone and its faces.

A :class:`ValuationCone` is cut out in the dual lattice by finitely many
linearly independent primitive weight vectors s_1 ... s_k:

    V = { v : <s_i, v> <= 0 for all i }.

Faces correspond to subsets I of the defining vectors (the inequalities
turned into equalities), so the face lattice is the full power set and a
point's minimal face is read off from which pairings vanish.

Sign convention.  In the full-rank "wonderful" configuration the cone is
generated by a lattice basis e_1 ... e_r normalized by

    <s_i, e_j> == -delta_ij,

so the generators pair to -1 against their own defining vector, and the
weight functional kappa with kappa(e_i) == -1 is the coordinate sum of the
defining vectors.  This keeps both the inequality description above and
the lattice-point generating identities literally true at once.

Everything is an immutable value; all operations are pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .exactpoly import LaurentPoly, ToolkitError
from .intlattice import dot, is_primitive, rational_rank

IntVector = tuple[int, ...]


class DimensionMismatch(ToolkitError):
    """A vector has the wrong length for the lattice."""


class NotInCone(ToolkitError):
    """A vector claimed to lie in the cone does not."""


class NotWonderful(ToolkitError):
    """The cone is not in the full-rank dual-basis configuration."""


@dataclass(frozen=True)
class PairedLattice:
    """Z^r together with the standard dot pairing against its dual."""

    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("lattice rank must be nonnegative")

    def pairing(self, m: Sequence[int], v: Sequence[int]) -> int:
        if len(m) != self.rank or len(v) != self.rank:
            raise DimensionMismatch(
                f"expected vectors of length {self.rank}, got {len(m)} and {len(v)}"
            )
        return dot(m, v)


@dataclass(frozen=True)
class ValuationCone:
    """Cone { v : <s_i, v> <= 0 } for independent primitive vectors s_i."""

    lattice: PairedLattice
    spherical_roots: tuple[IntVector, ...]

    def __post_init__(self):
        r = self.lattice.rank
        for i, s in enumerate(self.spherical_roots):
            if len(s) != r:
                raise DimensionMismatch(f"defining vector {i + 1} has length {len(s)}, not {r}")
            if not is_primitive(s):
                raise ValueError(f"defining vector {i + 1} is not primitive: {s}")
        k = len(self.spherical_roots)
        if k > r:
            raise ValueError(f"{k} defining vectors exceed the lattice rank {r}")
        if k and rational_rank(self.spherical_roots) != k:
            raise ValueError("defining vectors are linearly dependent")

    @property
    def num_roots(self) -> int:
        return len(self.spherical_roots)


def contains(cone: ValuationCone, v: Sequence[int]) -> bool:
    """Membership test: every pairing against a defining vector is <= 0."""
    if len(v) != cone.lattice.rank:
        raise DimensionMismatch(
            f"vector length {len(v)} does not match lattice rank {cone.lattice.rank}"
        )
    return all(dot(s, v) <= 0 for s in cone.spherical_roots)


def i_of_v(cone: ValuationCone, v: Sequence[int]) -> frozenset[int]:
    """Indices (0-based) of the defining vectors vanishing on ``v``.

    This labels the minimal face of the cone containing ``v``; the vector
    must lie in the cone.
    """
    if not contains(cone, v):
        raise NotInCone(f"{tuple(v)} is not in the cone")
    return frozenset(
        i for i, s in enumerate(cone.spherical_roots) if dot(s, v) == 0
    )


@dataclass(frozen=True)
class ConeFace:
    """Face of the cone labelled by a subset of defining-vector indices."""

    cone: ValuationCone
    subset: frozenset[int]

    def __post_init__(self):
        bad = [i for i in self.subset if not 0 <= i < self.cone.num_roots]
        if bad:
            raise ValueError(f"face subset indices {sorted(bad)} out of range")

    def dim(self) -> int:
        return self.cone.lattice.rank - len(self.subset)

    def contains_point(self, v: Sequence[int]) -> bool:
        """Point of the cone with the subset's pairings exactly zero."""
        if not contains(self.cone, v):
            return False
        return all(dot(self.cone.spherical_roots[i], v) == 0 for i in self.subset)

    def contains_relint_point(self, v: Sequence[int]) -> bool:
        """Point whose minimal face is exactly this one."""
        return contains(self.cone, v) and i_of_v(self.cone, v) == self.subset


def enumerate_faces(cone: ValuationCone) -> list[ConeFace]:
    """All 2^k faces, ordered by subset cardinality then lexicographically."""
    out = []
    indices = range(cone.num_roots)
    for size in range(cone.num_roots + 1):
        for combo in combinations(indices, size):
            out.append(ConeFace(cone, frozenset(combo)))
    return out


def wonderful_generators(cone: ValuationCone) -> list[IntVector]:
    """The lattice basis e_1 ... e_r with <s_i, e_j> == -delta_ij.

    Exists exactly when the defining vectors are a basis of the weight
    lattice (full rank and determinant +-1); otherwise the configuration
    is not wonderful and :class:`NotWonderful` is raised.
    """
    r = cone.lattice.rank
    k = cone.num_roots
    if k != r:
        raise NotWonderful(f"{k} defining vectors in rank {r}; need a full basis")
    mat = [[Fraction(x) for x in s] for s in cone.spherical_roots]
    rhs = [[Fraction(-int(i == j)) for j in range(r)] for i in range(r)]
    # Solve S E = -Id column by column via Gauss-Jordan on [S | -Id].
    for col in range(r):
        pivot = next((row for row in range(col, r) if mat[row][col]), None)
        if pivot is None:
            raise NotWonderful("defining vectors are singular")
        mat[col], mat[pivot] = mat[pivot], mat[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / mat[col][col]
        mat[col] = [x * inv for x in mat[col]]
        rhs[col] = [x * inv for x in rhs[col]]
        for row in range(r):
            if row != col and mat[row][col]:
                factor = mat[row][col]
                mat[row] = [x - factor * y for x, y in zip(mat[row], mat[col])]
                rhs[row] = [x - factor * y for x, y in zip(rhs[row], rhs[col])]
    gens = []
    for j in range(r):
        col_vec = [rhs[i][j] for i in range(r)]
        if any(x.denominator != 1 for x in col_vec):
            raise NotWonderful(
                "dual generators are not integral; defining vectors are not "
                "a lattice basis"
            )
        gens.append(tuple(int(x) for x in col_vec))
    return gens


@dataclass(frozen=True)
class KappaFunctional:
    """Linear functional on the dual lattice given by a weight vector."""

    lattice: PairedLattice
    vector: IntVector

    def __post_init__(self):
        if len(self.vector) != self.lattice.rank:
            raise DimensionMismatch(
                f"functional vector length {len(self.vector)} != rank {self.lattice.rank}"
            )

    def value(self, v: Sequence[int]) -> int:
        return self.lattice.pairing(self.vector, v)

    @classmethod
    def wonderful(cls, cone: ValuationCone) -> "KappaFunctional":
        """The functional with value -1 on every wonderful generator.

        With generators normalized by <s_i, e_j> == -delta_ij this is the
        coordinate sum of the defining vectors; the normalization is
        verified rather than assumed.
        """
        gens = wonderful_generators(cone)
        vec = tuple(
            sum(s[j] for s in cone.spherical_roots)
            for j in range(cone.lattice.rank)
        )
        kappa = cls(cone.lattice, vec)
        for e in gens:
            if kappa.value(e) != -1:
                raise NotWonderful("normalization failed: kappa(e_i) != -1")
        return kappa


def relint_lattice_points(
    face: ConeFace, kappa: KappaFunctional, depth: int
) -> LaurentPoly:
    """Exponent counts of kappa over relative-interior lattice points.

    Returns sum over lattice points v in the relative interior of the face
    with kappa(v) >= -depth of a term t^kappa(v), as a Laurent polynomial
    whose coefficient at t^-m counts points with kappa value -m.  Counts
    are complete for exponents >= -depth; deeper points are not examined.

    Restricted to the wonderful configuration: relative-interior points
    are exactly the combinations over the face's free generators with all
    coefficients >= 1, and kappa of such a point is minus the coefficient
    sum.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    gens = wonderful_generators(face.cone)
    for e in gens:
        if kappa.value(e) != -1:
            raise NotWonderful("kappa is not normalized to -1 on the generators")
    free = [i for i in range(face.cone.num_roots) if i not in face.subset]
    counts: dict[int, int] = {}
    if not free:
        counts[0] = 1
        return LaurentPoly(counts)

    def walk(pos: int, total: int) -> None:
        if pos == len(free):
            counts[-total] = counts.get(-total, 0) + 1
            return
        remaining = len(free) - pos - 1
        coeff = 1
        while total + coeff + remaining <= depth:
            walk(pos + 1, total + coeff)
            coeff += 1

    walk(0, 0)
    return LaurentPoly(counts)


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def cone_to_json(cone: ValuationCone) -> dict:
    return {
        "rank": cone.lattice.rank,
        "spherical_roots": [list(s) for s in cone.spherical_roots],
    }


def cone_from_json(data: dict) -> ValuationCone:
    if not isinstance(data, dict):
        raise ValueError("cone document must be a JSON object")
    try:
        rank = int(data["rank"])
        roots = tuple(tuple(int(x) for x in row) for row in data["spherical_roots"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad cone document: {exc}") from exc
    return ValuationCone(PairedLattice(rank), roots)


def load_cone(path: str) -> ValuationCone:
    with open(path, "r", encoding="utf-8") as handle:
        return cone_from_json(json.load(handle))
