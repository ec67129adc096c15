import json
import random

import pytest

from sphsat.latcone import PairedLattice, enumerate_faces
from sphsat.rootsys import parse_root_system
from sphsat.sphdata import (
    BadSubset,
    Color,
    ColorMatrix,
    DatumError,
    DegenerateCone,
    InconsistentColor,
    SphericalDatum,
    SphericalRoot,
    classify_color,
    closed_orbit_datum,
    compute_s_p,
    count_satellites,
    datum_from_json,
    datum_to_json,
    satellite_datum,
)
from conftest import random_datum


def minor_pair_datum() -> SphericalDatum:
    """Datum of the pair of size-3 general linear groups over the diagonal.

    The lattice is spanned by the three principal minors; the defining
    vectors are the weights of the two minor ratios, supported on matching
    simple roots of the two factors, and each minor divisor gives a color
    mapping to the corresponding dual basis vector.
    """
    return SphericalDatum(
        ambient=parse_root_system("A2xA2"),
        lattice=PairedLattice(3),
        spherical_roots=(
            SphericalRoot("s1", (2, -1, 0), frozenset({1, 3})),
            SphericalRoot("s2", (-1, 2, -1), frozenset({2, 4})),
        ),
        s_p=frozenset(),
        colors_a=(
            Color("D1", frozenset({1, 3}), (1, 0, 0)),
            Color("D2", frozenset({2, 4}), (0, 1, 0)),
        ),
    )


def triple_datum() -> SphericalDatum:
    """A full-rank datum with three defining vectors on pairwise supports."""
    return SphericalDatum(
        ambient=parse_root_system("A1xA1xA1"),
        lattice=PairedLattice(3),
        spherical_roots=(
            SphericalRoot("s1", (1, 1, 0), frozenset({1, 2})),
            SphericalRoot("s2", (0, 1, 1), frozenset({2, 3})),
            SphericalRoot("s3", (1, 0, 1), frozenset({1, 3})),
        ),
        s_p=frozenset(),
        colors_a=(
            Color("D1", frozenset({1}), (1, 0, 0)),
            Color("D2", frozenset({2}), (0, 1, 0)),
            Color("D3", frozenset({3}), (0, 0, 1)),
        ),
    )


# ---------------------------------------------------------------------------
# Color classification
# ---------------------------------------------------------------------------


def test_classify_color_examples():
    assert classify_color((0, 2, 0), (1, 2, 0)) == "2a"
    assert classify_color((1, 1, 0), (2, 2, 1)) == "a"
    assert classify_color((1, 0, 0), (1, 0, 0)) == "b"


def test_classify_color_rejects_bad_rows():
    with pytest.raises(InconsistentColor):
        classify_color((2, 1, 0), (2, 1, 0))
    with pytest.raises(InconsistentColor):
        classify_color((1, 1, 0), (2, 1, 0))  # mixed sums over the support
    with pytest.raises(InconsistentColor):
        classify_color((0, 0, 0), (0, 0, 0))
    with pytest.raises(InconsistentColor):
        classify_color((3, 0, 0), (3, 0, 0))


def test_color_matrix_validation():
    with pytest.raises(InconsistentColor):
        ColorMatrix(((1, 3),))
    with pytest.raises(InconsistentColor):
        ColorMatrix(((1, 1), (1, 1), (1, 0)))  # a column sums to 3
    matrix = ColorMatrix(((2, 0, 0), (0, 0, 1)))
    assert matrix.column_sums() == (2, 0, 1)


def test_compute_s_p():
    assert compute_s_p(ColorMatrix(((0, 0),))) == frozenset({1, 2})
    assert compute_s_p(ColorMatrix(((2, 0, 0), (0, 0, 1)))) == frozenset({2})
    assert compute_s_p(ColorMatrix(((1, 1), (1, 1)))) == frozenset()


# ---------------------------------------------------------------------------
# Satellite transform
# ---------------------------------------------------------------------------


def test_satellite_filters_by_support():
    datum = minor_pair_datum()
    sat = satellite_datum(datum, ["s1"])
    assert sat.root_names == ("s1",)
    assert [c.id for c in sat.colors_a] == ["D1"]
    assert sat.lattice.rank == 3
    assert sat.s_p == datum.s_p


def test_satellite_full_subset_is_identity():
    datum = minor_pair_datum()
    assert satellite_datum(datum, ["s1", "s2"]).same_datum(datum)


def test_satellite_empty_subset_is_horospherical_shadow():
    datum = minor_pair_datum()
    empty = satellite_datum(datum, [])
    assert empty.root_names == ()
    assert empty.colors_a == ()
    assert empty.lattice.rank == datum.lattice.rank
    assert empty.s_p == datum.s_p


def test_satellite_unknown_root():
    with pytest.raises(BadSubset):
        satellite_datum(minor_pair_datum(), ["bogus"])


def test_satellite_preserves_rho_exactly():
    datum = triple_datum()
    sat = satellite_datum(datum, ["s1"])
    kept = {c.id: c.rho for c in sat.colors_a}
    assert kept == {"D1": (1, 0, 0), "D2": (0, 1, 0)}


def test_count_satellites():
    assert count_satellites(minor_pair_datum()) == 4
    assert count_satellites(triple_datum()) == 8
    assert count_satellites(satellite_datum(minor_pair_datum(), [])) == 1


def test_tower_property_random(rng: random.Random):
    for _ in range(100):
        datum = random_datum(rng)
        names = list(datum.root_names)
        if not names:
            continue
        big = rng.sample(names, rng.randint(1, len(names)))
        small = rng.sample(big, rng.randint(0, len(big)))
        twice = satellite_datum(satellite_datum(datum, big), small)
        once = satellite_datum(datum, small)
        assert twice.same_datum(once)


def test_satellite_count_matches_face_count_random(rng: random.Random):
    for _ in range(50):
        datum = random_datum(rng)
        faces = enumerate_faces(datum.valuation_cone())
        assert count_satellites(datum) == len(faces)


# ---------------------------------------------------------------------------
# Closed-orbit transform
# ---------------------------------------------------------------------------


def test_closed_orbit_no_generators_is_identity():
    datum = minor_pair_datum()
    assert closed_orbit_datum(datum, []) is datum


def test_closed_orbit_interior_vector_cuts_everything():
    datum = minor_pair_datum()
    # Interior vector: both pairings strictly negative.
    v = (0, 1, 3)
    out = closed_orbit_datum(datum, [v])
    assert out.root_names == ()
    assert out.colors_a == ()
    assert out.lattice.rank == 2


def test_closed_orbit_face_vector_keeps_orthogonal_root():
    datum = minor_pair_datum()
    v = (1, 2, 5)  # vanishes on s1, strictly negative on s2
    out = closed_orbit_datum(datum, [v])
    assert out.root_names == ("s1",)
    assert [c.id for c in out.colors_a] == ["D1"]
    assert out.lattice.rank == 2


def test_closed_orbit_full_cone_kills_lattice():
    cone_datum = SphericalDatum(
        ambient=parse_root_system("A2"),
        lattice=PairedLattice(2),
        spherical_roots=(
            SphericalRoot("s1", (1, 0), frozenset({1})),
            SphericalRoot("s2", (0, 1), frozenset({2})),
        ),
        s_p=frozenset(),
        colors_a=(),
    )
    out = closed_orbit_datum(cone_datum, [(-1, 0), (0, -1)])
    assert out.lattice.rank == 0
    assert out.root_names == ()


def test_closed_orbit_rejects_outside_generators():
    with pytest.raises(DegenerateCone):
        closed_orbit_datum(minor_pair_datum(), [(1, 0, 0)])


def test_closed_orbit_versus_satellite_on_triple():
    datum = triple_datum()
    # Vector in the relative interior of the face where s1 vanishes.
    v = (1, -1, -2)
    cone = datum.valuation_cone()
    from sphsat.latcone import i_of_v

    assert sorted(i_of_v(cone, v)) == [0]
    orbit = closed_orbit_datum(datum, [v])
    sat = satellite_datum(datum, ["s1"])
    # Both transforms drop the same colors and keep the same vectors.
    assert [c.id for c in orbit.colors_a] == [c.id for c in sat.colors_a]
    assert orbit.root_names == sat.root_names == ("s1",)
    # The satellite keeps the full lattice; the closed orbit cuts it.
    assert sat.lattice.rank == 3
    assert orbit.lattice.rank == 2
    # Surviving vectors stay primitive in the cut coordinates.
    for root in orbit.spherical_roots:
        from sphsat.intlattice import is_primitive

        assert is_primitive(root.vector)


def test_closed_orbit_projects_rho_by_kernel_pairing():
    datum = triple_datum()
    v = (1, -1, -2)
    orbit = closed_orbit_datum(datum, [v])
    from sphsat.intlattice import dot, kernel_basis

    basis = kernel_basis([v], 3)
    expected = {
        c.id: tuple(dot(b, c.rho) for b in basis)
        for c in datum.colors_a
        if c.id in ("D1", "D2")
    }
    assert {c.id: c.rho for c in orbit.colors_a} == expected


# ---------------------------------------------------------------------------
# Validation and serialization
# ---------------------------------------------------------------------------


def test_datum_validation_errors():
    ambient = parse_root_system("A2")
    lattice = PairedLattice(2)
    root = SphericalRoot("s1", (1, 0), frozenset({1}))
    with pytest.raises(DatumError):  # dependent vectors
        SphericalDatum(
            ambient, lattice,
            (root, SphericalRoot("s2", (-1, 0), frozenset({2}))),
            frozenset(), (),
        )
    with pytest.raises(DatumError):  # not primitive
        SphericalDatum(
            ambient, lattice,
            (SphericalRoot("s1", (2, 0), frozenset({1})),),
            frozenset(), (),
        )
    with pytest.raises(DatumError):  # unknown support index
        SphericalDatum(
            ambient, lattice,
            (SphericalRoot("s1", (1, 0), frozenset({9})),),
            frozenset(), (),
        )
    with pytest.raises(DatumError):  # color misses every support
        SphericalDatum(
            ambient, lattice, (root,), frozenset(),
            (Color("D1", frozenset({2}), (0, 0)),),
        )
    with pytest.raises(DatumError):  # s_p overlaps a color
        SphericalDatum(
            ambient, lattice, (root,), frozenset({1}),
            (Color("D1", frozenset({1}), (0, 0)),),
        )
    with pytest.raises(DatumError):  # duplicate names
        SphericalDatum(
            ambient, lattice,
            (root, SphericalRoot("s1", (0, 1), frozenset({2}))),
            frozenset(), (),
        )


def test_color_validation():
    with pytest.raises(InconsistentColor):
        Color("D1", frozenset(), (0,))
    with pytest.raises(InconsistentColor):
        Color("D1", frozenset({1, 2}), (0,), declared_type="2a")
    with pytest.raises(InconsistentColor):
        Color("D1", frozenset({1}), (0,), declared_type="c")


def test_datum_json_round_trip():
    datum = minor_pair_datum()
    blob = json.dumps(datum_to_json(datum), sort_keys=True)
    again = datum_from_json(json.loads(blob))
    assert again.same_datum(datum)
    assert json.dumps(datum_to_json(again), sort_keys=True) == blob


def test_datum_from_json_names_missing_field():
    with pytest.raises(DatumError) as info:
        datum_from_json({"ambient": "A1"})
    assert "lattice_rank" in str(info.value)
