"""Finite root systems and flag-variety virtual Poincare polynomials.

A :class:`RootSystem` is a product of irreducible components, each given
by a Cartan letter A-G and a rank.  Positive roots are integer coefficient
vectors over the simple roots (global indexing across components), built
by the standard closure recurrence from the Cartan matrix, so no per-type
case analysis appears in the core.

The flag polynomial of a parabolic quotient is computed by two
independent routes that cross-validate each other:

* :func:`flag_poincare_heights` multiplies, over the positive roots
  outside the chosen Levi subsystem, the factors
  (t^(ht+1) - 1) / (t^ht - 1), where ht is the root height;

* :func:`flag_poincare_degrees` divides the product of (t^d - 1) over the
  fundamental degrees of the ambient group by (t - 1) per torus direction
  and by the same product over the degrees of the Levi.

Both return exact integer Laurent polynomials; the division clearing is
itself a correctness check and failures raise
:class:`InternalDivisibility`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .exactpoly import LaurentPoly, NotDivisible, ToolkitError, exact_div

RootVector = tuple[int, ...]


class UnsupportedType(ToolkitError):
    """Malformed or out-of-bounds (Cartan type, rank) pair."""


class InternalDivisibility(ToolkitError):
    """A flag-polynomial quotient failed to clear; construction bug."""


_CLASSICAL_MAX_RANK = 16
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def _check_component(letter: str, rank: int) -> None:
    if letter in "ABCD":
        if rank < _MIN_RANK[letter]:
            raise UnsupportedType(f"{letter}{rank}: rank must be >= {_MIN_RANK[letter]}")
        if rank > _CLASSICAL_MAX_RANK:
            raise UnsupportedType(
                f"{letter}{rank}: classical rank bound is {_CLASSICAL_MAX_RANK}"
            )
    elif letter in _EXCEPTIONAL_RANKS:
        if rank not in _EXCEPTIONAL_RANKS[letter]:
            raise UnsupportedType(f"{letter}{rank} is not a valid exceptional type")
    else:
        raise UnsupportedType(f"unknown Cartan letter {letter!r}")


@lru_cache(maxsize=None)
def cartan_matrix(letter: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix in Bourbaki numbering; entry [i][j] is <a_i, a_j^vee>."""
    _check_component(letter, rank)
    n = rank
    a = [[2 * int(i == j) for j in range(n)] for i in range(n)]

    def link(i, j, down=-1, up=-1):
        a[i][j] = down
        a[j][i] = up

    if letter == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif letter == "B":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, down=-2, up=-1)
    elif letter == "C":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, down=-1, up=-2)
    elif letter == "D":
        for i in range(n - 3):
            link(i, i + 1)
        link(n - 3, n - 2)
        link(n - 3, n - 1)
    elif letter == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for x, y in zip(chain, chain[1:]):
            link(x, y)
        link(1, 3)
    elif letter == "F":
        link(0, 1)
        link(1, 2, down=-2, up=-1)
        link(2, 3)
    elif letter == "G":
        link(0, 1, down=-1, up=-3)
    return tuple(tuple(row) for row in a)


_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    "D": lambda n: list(range(2, 2 * n - 1, 2)) + [n],
    "G": lambda n: [2, 6],
    "F": lambda n: [2, 6, 8, 12],
    "E": lambda n: {
        6: [2, 5, 6, 8, 9, 12],
        7: [2, 6, 8, 10, 12, 14, 18],
        8: [2, 8, 12, 14, 18, 20, 24, 30],
    }[n],
}


def weyl_order(letter: str, rank: int) -> int:
    """Classical order of the Weyl group, used to cross-check the tables."""
    n = rank
    if letter == "A":
        return factorial(n + 1)
    if letter in ("B", "C"):
        return 2**n * factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * factorial(n)
    if letter == "G":
        return 12
    if letter == "F":
        return 1152
    return {6: 51840, 7: 2903040, 8: 696729600}[n]


@lru_cache(maxsize=None)
def component_positive_roots(letter: str, rank: int) -> tuple[RootVector, ...]:
    """All positive roots of one irreducible component, by height then lex.

    Roots are grown from the simple ones: a + a_i is a root exactly when
    the a_i-string through a does not stop, i.e. when
    p - <a, a_i^vee> >= 1 with p the depth of the string below a.
    """
    cartan = cartan_matrix(letter, rank)
    n = rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    roots = list(simple)
    while layer:
        nxt = []
        for root in layer:
            for i in range(n):
                pairing = sum(root[j] * cartan[j][i] for j in range(n))
                depth = 0
                probe = list(root)
                while True:
                    probe[i] -= 1
                    if probe[i] < 0 or tuple(probe) not in known:
                        break
                    depth += 1
                if depth - pairing >= 1:
                    up = list(root)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in known:
                        known.add(cand)
                        nxt.append(cand)
        roots.extend(sorted(nxt))
        layer = nxt
    roots.sort(key=lambda r: (sum(r), r))
    _validate_component(letter, rank, roots)
    return tuple(roots)


_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "G": lambda n: 6,
    "F": lambda n: 24,
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
}


def _validate_component(letter: str, rank: int, roots: Sequence[RootVector]) -> None:
    expected = _ROOT_COUNT[letter](rank)
    if len(roots) != expected:
        raise InternalDivisibility(
            f"{letter}{rank}: built {len(roots)} positive roots, expected {expected}"
        )
    degs = _DEGREES[letter](rank)
    if sum(d - 1 for d in degs) != expected:
        raise InternalDivisibility(
            f"{letter}{rank}: degree table inconsistent with root count"
        )
    order = 1
    for d in degs:
        order *= d
    if order != weyl_order(letter, rank):
        raise InternalDivisibility(
            f"{letter}{rank}: degree table inconsistent with Weyl group order"
        )


@dataclass(frozen=True)
class RootSystem:
    """Product of irreducible components, e.g. (('A', 2), ('A', 2))."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.components:
            raise UnsupportedType("a root system needs at least one component")
        for letter, rank in self.components:
            _check_component(letter, rank)

    @property
    def rank(self) -> int:
        return sum(rank for _, rank in self.components)

    def simple_root_indices(self) -> range:
        """Global 1-based simple root indices."""
        return range(1, self.rank + 1)

    def component_spans(self) -> list[tuple[str, int, int]]:
        """(letter, rank, global offset) per component."""
        spans = []
        offset = 0
        for letter, rank in self.components:
            spans.append((letter, rank, offset))
            offset += rank
        return spans

    def degrees(self) -> list[int]:
        """Fundamental degrees over all components, ascending."""
        out: list[int] = []
        for letter, rank in self.components:
            out.extend(_DEGREES[letter](rank))
        return sorted(out)

    def weyl_group_order(self) -> int:
        order = 1
        for letter, rank in self.components:
            order *= weyl_order(letter, rank)
        return order

    def descriptor(self) -> str:
        return "x".join(f"{letter}{rank}" for letter, rank in self.components)

    def __str__(self) -> str:
        return self.descriptor()


def parse_root_system(text: str) -> RootSystem:
    """Parse a descriptor like "A3", "C4" or "A1xA1xA1"."""
    parts = text.strip().split("x")
    components = []
    for part in parts:
        match = re.fullmatch(r"\s*([A-Ga-g])(\d+)\s*", part)
        if not match:
            raise UnsupportedType(f"bad root-system descriptor {part!r} in {text!r}")
        components.append((match.group(1).upper(), int(match.group(2))))
    return RootSystem(tuple(components))


def positive_roots(rs: RootSystem) -> list[RootVector]:
    """All positive roots as global coefficient vectors, by height then lex."""
    total = rs.rank
    out: list[RootVector] = []
    for letter, rank, offset in rs.component_spans():
        for root in component_positive_roots(letter, rank):
            vec = [0] * total
            vec[offset : offset + rank] = root
            out.append(tuple(vec))
    out.sort(key=lambda r: (sum(r), r))
    return out


def height(root: Sequence[int]) -> int:
    """Sum of the simple-root coefficients of a positive root."""
    if any(c < 0 for c in root) or not any(root):
        raise ValueError(f"{root} is not a positive root vector")
    return sum(root)


def support(root: Sequence[int]) -> frozenset[int]:
    """Global 1-based indices of the simple roots appearing in the root."""
    return frozenset(i + 1 for i, c in enumerate(root) if c)


@dataclass(frozen=True)
class LeviSubset:
    """A subset of global simple-root indices selecting a standard Levi."""

    root_system: RootSystem
    subset: frozenset[int]

    def __post_init__(self):
        bad = [i for i in self.subset if i not in self.root_system.simple_root_indices()]
        if bad:
            raise UnsupportedType(
                f"Levi indices {sorted(bad)} outside 1..{self.root_system.rank}"
            )

    @classmethod
    def of(cls, rs: RootSystem, indices: Iterable[int]) -> "LeviSubset":
        return cls(rs, frozenset(indices))


def _global_cartan(rs: RootSystem) -> list[list[int]]:
    n = rs.rank
    full = [[0] * n for _ in range(n)]
    for letter, rank, offset in rs.component_spans():
        block = cartan_matrix(letter, rank)
        for i in range(rank):
            for j in range(rank):
                full[offset + i][offset + j] = block[i][j]
    return full


def classify_levi_components(rs: RootSystem, subset: frozenset[int]) -> list[tuple[str, int]]:
    """Cartan types of the connected components of a simple-root subset.

    The sub-diagram of a finite Dynkin diagram is again one, so the shape
    analysis below (edge multiplicities, branch node, arm lengths) is
    exhaustive; anything else signals corrupted input.
    """
    cartan = _global_cartan(rs)
    nodes = sorted(subset)
    index = {v: i for i, v in enumerate(nodes)}
    adj: dict[int, list[int]] = {v: [] for v in nodes}
    for v in nodes:
        for w in nodes:
            if v != w and cartan[v - 1][w - 1]:
                adj[v].append(w)
    seen: set[int] = set()
    out = []
    for start in nodes:
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(_classify_connected(sorted(comp), adj, cartan))
    del index
    return sorted(out)


def _classify_connected(
    comp: list[int], adj: dict[int, list[int]], cartan: list[list[int]]
) -> tuple[str, int]:
    m = len(comp)
    mult = {}
    for v in comp:
        for w in adj[v]:
            if v < w:
                mult[(v, w)] = cartan[v - 1][w - 1] * cartan[w - 1][v - 1]
    if any(x == 3 for x in mult.values()):
        if m != 2:
            raise UnsupportedType("triple edge in a component of rank != 2")
        return ("G", 2)
    branch = [v for v in comp if len(adj[v]) >= 3]
    if branch:
        if len(branch) != 1 or any(x != 1 for x in mult.values()):
            raise UnsupportedType("invalid branched sub-diagram")
        arms = sorted(_arm_lengths(branch[0], adj))
        if arms[:2] == [1, 1]:
            return ("D", m)
        if arms == [1, 2, 2]:
            return ("E", 6)
        if arms == [1, 2, 3]:
            return ("E", 7)
        if arms == [1, 2, 4]:
            return ("E", 8)
        raise UnsupportedType(f"unrecognized branched sub-diagram with arms {arms}")
    doubles = [edge for edge, x in mult.items() if x == 2]
    if not doubles:
        return ("A", m)
    if len(doubles) > 1:
        raise UnsupportedType("more than one double edge in a component")
    u, w = doubles[0]
    if len(adj[u]) == 2 and len(adj[w]) == 2:
        if m != 4:
            raise UnsupportedType("interior double edge in a component of rank != 4")
        return ("F", 4)
    # The double edge sits at an end of the path; orient so the second
    # node is the short-root end and read off B versus C.
    if len(adj[w]) == 1:
        tail_prev, tail = u, w
    else:
        tail_prev, tail = w, u
    return ("B" if cartan[tail_prev - 1][tail - 1] == -2 else "C", m)


def _arm_lengths(center: int, adj: dict[int, list[int]]) -> list[int]:
    arms = []
    for first in adj[center]:
        length = 1
        prev, cur = center, first
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise UnsupportedType("nested branch in sub-diagram")
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return arms


def levi_degrees(rs: RootSystem, subset: frozenset[int]) -> list[int]:
    """Fundamental degrees of the semisimple part of a standard Levi."""
    out: list[int] = []
    for letter, rank in classify_levi_components(rs, subset):
        out.extend(_DEGREES[letter](rank))
    return sorted(out)


def _levi_positive_roots(rs: RootSystem, subset: frozenset[int]) -> set[RootVector]:
    return {r for r in positive_roots(rs) if support(r) <= subset}


def flag_poincare_heights(rs: RootSystem, levi: LeviSubset) -> LaurentPoly:
    """Flag polynomial of G/P via the height product over excluded roots.

    The product of (t^(ht+1) - 1) over positive roots outside the Levi
    subsystem, divided by the product of (t^ht - 1) over the same roots;
    only the full quotient is a polynomial, so the division happens once.
    """
    if levi.root_system != rs:
        raise UnsupportedType("Levi subset belongs to a different root system")
    inside = _levi_positive_roots(rs, levi.subset)
    numerator = LaurentPoly.one()
    denominator = LaurentPoly.one()
    for root in positive_roots(rs):
        if root in inside:
            continue
        h = height(root)
        numerator = numerator * (LaurentPoly.t(h + 1) - LaurentPoly.one())
        denominator = denominator * (LaurentPoly.t(h) - LaurentPoly.one())
    try:
        return exact_div(numerator, denominator)
    except NotDivisible as exc:
        raise InternalDivisibility(
            f"height product for {rs} with Levi {sorted(levi.subset)} "
            f"did not clear: {exc}"
        ) from exc


def flag_poincare_degrees(rs: RootSystem, levi: LeviSubset) -> LaurentPoly:
    """Flag polynomial of G/P via fundamental degrees of G and the Levi."""
    if levi.root_system != rs:
        raise UnsupportedType("Levi subset belongs to a different root system")
    numerator = LaurentPoly.one()
    for d in rs.degrees():
        numerator = numerator * (LaurentPoly.t(d) - LaurentPoly.one())
    denominator = (LaurentPoly.t() - LaurentPoly.one()) ** (rs.rank - len(levi.subset))
    for d in levi_degrees(rs, levi.subset):
        denominator = denominator * (LaurentPoly.t(d) - LaurentPoly.one())
    try:
        return exact_div(numerator, denominator)
    except NotDivisible as exc:
        raise InternalDivisibility(
            f"degree quotient for {rs} with Levi {sorted(levi.subset)} "
            f"did not clear: {exc}"
        ) from exc


def parse_levi_indices(text: str) -> frozenset[int]:
    """Parse comma-separated simple-root indices like "1,3"; "" is empty."""
    text = text.strip()
    if not text:
        return frozenset()
    try:
        return frozenset(int(piece) for piece in text.split(","))
    except ValueError as exc:
        raise UnsupportedType(f"bad Levi subset {text!r}") from exc


def find_levi_of_type(rs: RootSystem, type_text: str) -> LeviSubset:
    """First (lexicographic) simple-root subset whose Levi has the given type.

    Used by the command line to accept named embeddings such as a rank-3
    subsystem of type B inside F4.
    """
    from itertools import combinations

    target = parse_root_system(type_text)
    want = sorted(target.components)
    size = target.rank
    for combo in combinations(sorted(rs.simple_root_indices()), size):
        if classify_levi_components(rs, frozenset(combo)) == want:
            return LeviSubset.of(rs, combo)
    raise UnsupportedType(f"no Levi of type {type_text} inside {rs.descriptor()}")
