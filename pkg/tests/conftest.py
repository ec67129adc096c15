import random

import pytest

from sphsat.exactpoly import LaurentPoly
from sphsat.intlattice import rational_rank, vector_gcd
from sphsat.latcone import PairedLattice
from sphsat.rootsys import parse_root_system
from sphsat.sphdata import Color, SphericalDatum, SphericalRoot


def random_poly(rng: random.Random, max_terms=6, exp_range=(-6, 6), coeff_range=(-9, 9)):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exp = rng.randint(*exp_range)
        coeff = rng.randint(*coeff_range)
        if coeff:
            terms[exp] = coeff
    return LaurentPoly(terms)


def random_primitive_vector(rng: random.Random, dim: int):
    while True:
        vec = [rng.randint(-3, 3) for _ in range(dim)]
        g = vector_gcd(vec)
        if g:
            return tuple(x // g for x in vec)


def random_datum(rng: random.Random, max_rank=5, max_colors=6) -> SphericalDatum:
    """A structurally valid datum with random vectors, supports and colors."""
    r = rng.randint(1, max_rank)
    k = rng.randint(0, r)
    vectors: list[tuple[int, ...]] = []
    while len(vectors) < k:
        candidate = random_primitive_vector(rng, r)
        if rational_rank(vectors + [candidate]) == len(vectors) + 1:
            vectors.append(candidate)
    n_simple = rng.randint(2, 6)
    ambient = parse_root_system(f"A{n_simple}")
    roots = []
    for i, vec in enumerate(vectors):
        size = rng.randint(1, 2)
        sup = frozenset(rng.sample(range(1, n_simple + 1), size))
        roots.append(SphericalRoot(f"s{i + 1}", vec, sup))
    full_support = frozenset().union(*(root.support for root in roots)) if roots else frozenset()
    colors = []
    if full_support:
        for i in range(rng.randint(0, max_colors)):
            anchor = rng.choice(sorted(full_support))
            extra = rng.sample(range(1, n_simple + 1), rng.randint(0, 1))
            colors.append(
                Color(
                    f"D{i + 1}",
                    frozenset({anchor, *extra}),
                    tuple(rng.randint(-4, 4) for _ in range(r)),
                )
            )
    used = frozenset().union(*(c.j_set for c in colors)) if colors else frozenset()
    s_p = frozenset(
        j for j in range(1, n_simple + 1) if j not in used and rng.random() < 0.3
    )
    return SphericalDatum(
        ambient=ambient,
        lattice=PairedLattice(r),
        spherical_roots=tuple(roots),
        s_p=s_p,
        colors_a=tuple(colors),
    )


@pytest.fixture
def rng():
    return random.Random(20260810)
