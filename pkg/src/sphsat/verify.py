"""Named verification suites over the shipped catalog.

Each suite returns a list of :class:`CheckResult` rows; a row records the
check name, the input it ran on, the expected and computed values as
canonical strings, and whether they agreed.  Failures never abort a
suite: a typed error from the calculus is caught and recorded as a
failing row, because a divisibility obstruction on catalog data is a
result, not a crash.

Suites:

* ``rankone``    ratio, shape, closed-orbit and degree-law checks over
                 every row of the rank-one dataset;
* ``levifamily`` the type-A parabolic ratio family, both formulas;
* ``sl2cubed``   the rank-three family's satellite ratios;
* ``wonderful``  orbit-sum identities, catalog and synthetic;
* ``arcs``       the isotropy witness family and its limits;
* ``all``        everything above.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import arcjets, catalog
from .exactpoly import LaurentPoly, ToolkitError, TruncSeries, format_poly
from .latcone import (
    ConeFace,
    KappaFunctional,
    PairedLattice,
    ValuationCone,
    relint_lattice_points,
)
from .poincare import (
    MissingData,
    SatelliteFamily,
    brion_peyre_q,
    check_degree_laws,
    horospherical_factor,
    inverse_degree,
    ratio_r,
    wonderful_sum,
)
from .rootsys import (
    LeviSubset,
    flag_poincare_degrees,
    flag_poincare_heights,
    parse_root_system,
    positive_roots,
    support,
)

SUITES = ("rankone", "levifamily", "sl2cubed", "wonderful", "arcs", "all")

PARAMETER_VALUES = (2, 3, 4, 5)
LEVI_FAMILY_DEFAULT_N = 5
SERIES_COMPARE_DEPTH = 12
ARC_ORDER = 8


@dataclass(frozen=True)
class CheckResult:
    check: str
    input: str
    expected: str
    computed: str
    passed: bool

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "input": self.input,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
        }


def _result(check, inp, expected, computed) -> CheckResult:
    exp_text = expected if isinstance(expected, str) else format_poly(expected)
    got_text = computed if isinstance(computed, str) else format_poly(computed)
    return CheckResult(check, inp, exp_text, got_text, exp_text == got_text)


def _flag(check, inp, condition, detail="") -> CheckResult:
    return CheckResult(
        check, inp, "true", "true" if condition else f"false {detail}".strip(),
        bool(condition),
    )


def _error_row(check, inp, exc) -> CheckResult:
    return CheckResult(check, inp, "no error", f"{type(exc).__name__}: {exc}", False)


# ---------------------------------------------------------------------------
# Rank-one dataset
# ---------------------------------------------------------------------------


def _rank_one_entries(path=None):
    for row in catalog.rank_one_rows(path):
        try:
            probe = catalog.rank_one_row(row, None, path)
        except catalog.MissingParameter:
            for n in PARAMETER_VALUES:
                yield catalog.rank_one_row(row, n, path)
            continue
        yield probe


def suite_rankone(path=None) -> list[CheckResult]:
    out = []
    for entry in _rank_one_entries(path):
        rec = entry.record
        label = entry.id
        if entry.parameter_value is not None and entry.parameter is not None:
            label = f"{entry.id}[{entry.parameter.name}={entry.parameter_value}]"
        try:
            ratio = ratio_r(rec.p_gh_empty, rec.p_gh)
        except ToolkitError as exc:
            out.append(_error_row("rankone.ratio", label, exc))
            continue
        out.append(_result("rankone.ratio", label, rec.r_empty, ratio))
        out.append(
            _flag(
                "rankone.two-terms",
                label,
                ratio.num_terms() == 2,
                f"({ratio.num_terms()} terms)",
            )
        )
        out.append(
            _flag("rankone.constant-term-1", label, ratio.constant_term == 1)
        )
        out.append(
            _flag(
                "rankone.inverse-variable",
                label,
                ratio.degree() <= 0,
                f"(max exponent {ratio.degree()})",
            )
        )
        try:
            factor = horospherical_factor(rec.p_gh_empty, 1)
            out.append(
                _flag(
                    "rankone.torus-base-at-0",
                    label,
                    factor.value_at_zero == 1,
                    f"(value {factor.value_at_zero})",
                )
            )
        except ToolkitError as exc:
            out.append(_error_row("rankone.torus-base-at-0", label, exc))
        if entry.closed_orbit is not None:
            orbit = entry.closed_orbit
            flag_poly = flag_poincare_degrees(orbit.root_system, orbit.levi)
            recomputed = (LaurentPoly.t() - LaurentPoly.one()) * flag_poly
            out.append(
                _result(
                    "rankone.closed-orbit",
                    f"{label} via {orbit.root_system.descriptor()} "
                    f"levi {sorted(orbit.levi.subset)}",
                    rec.p_gh_empty,
                    recomputed,
                )
            )
        if rec.u_g is not None and rec.u_h is not None:
            try:
                report = check_degree_laws(rec)
                out.append(
                    _result(
                        "rankone.degree-law",
                        label,
                        str(report.expected_degree),
                        str(report.degree),
                    )
                )
            except MissingData:
                pass
            if rec.r_g is not None and rec.r_h is not None:
                try:
                    fact = brion_peyre_q(
                        rec.p_gh, rec.u_g - rec.u_h, rec.r_g - rec.r_h
                    )
                    out.append(
                        _flag(
                            "rankone.cofactor-shape",
                            label,
                            fact.nonnegative and fact.unit_constant_term,
                            f"(Q = {fact.q})",
                        )
                    )
                except ToolkitError as exc:
                    out.append(_error_row("rankone.cofactor-shape", label, exc))
    return out


# ---------------------------------------------------------------------------
# Type-A parabolic ratio family
# ---------------------------------------------------------------------------


def suite_levifamily(n: int = LEVI_FAMILY_DEFAULT_N) -> list[CheckResult]:
    out = []
    rs = parse_root_system(f"A{n - 1}")
    roots = positive_roots(rs)
    for size in range(rs.rank + 1):
        for combo in combinations(sorted(rs.simple_root_indices()), size):
            subset = frozenset(combo)
            label = f"n={n} I={sorted(subset)}"
            try:
                ratio = catalog.levi_ratio_family(n, subset)
            except ToolkitError as exc:
                out.append(_error_row("levifamily.ratio", label, exc))
                continue
            out.append(
                _flag(
                    "levifamily.inverse-variable",
                    label,
                    ratio.is_zero() or ratio.degree() <= 0,
                )
            )
            out.append(
                _flag("levifamily.constant-term-1", label, ratio.constant_term == 1)
            )
            levi = LeviSubset.of(rs, subset)
            outside = sum(1 for r in roots if not support(r) <= subset)
            via_degrees = flag_poincare_degrees(rs, levi).shift(-outside)
            out.append(
                _result("levifamily.two-formulas", label, via_degrees, ratio)
            )
    return out


# ---------------------------------------------------------------------------
# The rank-three family
# ---------------------------------------------------------------------------


def suite_sl2cubed(path=None) -> list[CheckResult]:
    out = []
    entry = catalog.entry_by_id("family.sl2cubed", path=path)
    base = entry.record.p_gh
    one_plus = LaurentPoly({0: 1, -1: 1})
    one_minus_sq = LaurentPoly({0: 1, -2: -1})
    for subset, poly in sorted(entry.family.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        label = f"{entry.id} I={sorted(subset)}"
        try:
            ratio = ratio_r(poly, base)
        except ToolkitError as exc:
            out.append(_error_row("sl2cubed.ratio", label, exc))
            continue
        if not subset:
            out.append(_result("sl2cubed.ratio", label, one_minus_sq, ratio))
        elif len(subset) in (1, 2):
            out.append(_result("sl2cubed.ratio", label, one_plus, ratio))
        else:
            out.append(_result("sl2cubed.ratio", label, LaurentPoly.one(), ratio))
    return out


# ---------------------------------------------------------------------------
# Orbit-sum identities
# ---------------------------------------------------------------------------


def _rank_one_family(record) -> SatelliteFamily:
    return SatelliteFamily(
        rank=1,
        polynomials={
            frozenset(): record.p_gh_empty,
            frozenset({1}): record.p_gh,
        },
    )


def _synthetic_family(rank: int) -> SatelliteFamily:
    """A deterministic monic family divisible by the right torus powers."""
    t_minus_1 = LaurentPoly.t() - LaurentPoly.one()
    members = {}
    subsets = [
        frozenset(c)
        for size in range(rank + 1)
        for c in combinations(range(1, rank + 1), size)
    ]
    for index, subset in enumerate(subsets):
        unit = LaurentPoly({2: 1, 1: index % 3, 0: 1 + (index % 2)})
        members[subset] = (t_minus_1 ** (rank - len(subset))) * unit
    # Pad to a common degree: multiply by powers of t, keeping monicity.
    top = max(p.degree() for p in members.values())
    members = {s: p.shift(top - p.degree()) for s, p in members.items()}
    return SatelliteFamily(rank=rank, polynomials=members)


def _series_orbit_sum(family: SatelliteFamily, depth: int) -> dict[int, int]:
    """Coefficients of the generating-series form, sound to ``-depth``.

    Lattice points are enumerated to depth + top + 1, so the dropped tail
    of each count series can only touch exponents below -depth after
    multiplication by a member of degree <= top.
    """
    rank = family.rank
    top = max(p.degree() for p in family.polynomials.values())
    enum_depth = depth + top + 1
    cone = ValuationCone(
        PairedLattice(rank),
        tuple(
            tuple(int(i == j) for j in range(rank)) for i in range(rank)
        ),
    )
    kappa = KappaFunctional.wonderful(cone)
    total = LaurentPoly.zero()
    for subset, poly in family.polynomials.items():
        face = ConeFace(cone, frozenset(i - 1 for i in subset))
        counts = relint_lattice_points(face, kappa, enum_depth)
        total = total + poly * counts
    return {k: total.coeff(k) for k in range(-depth, top + 1)}


def suite_wonderful(path=None, depth: int = SERIES_COMPARE_DEPTH) -> list[CheckResult]:
    out = []
    for entry in catalog.load(path):
        if entry.record.rank != 1:
            continue
        label = entry.id
        try:
            total = wonderful_sum(_rank_one_family(entry.record))
        except ToolkitError as exc:
            out.append(_error_row("wonderful.sum", label, exc))
            continue
        if entry.wonderful_px is not None:
            out.append(_result("wonderful.sum", label, entry.wonderful_px, total))
        else:
            out.append(
                _flag(
                    "wonderful.sum-is-polynomial",
                    label,
                    not total.is_zero() and total.min_exp() >= 0,
                )
            )
        if entry.closed_orbit is not None:
            orbit = entry.closed_orbit
            independent = entry.record.p_gh + flag_poincare_degrees(
                orbit.root_system, orbit.levi
            )
            out.append(
                _result("wonderful.sum-vs-flag", label, independent, total)
            )
    for rank in (1, 2, 3):
        family = _synthetic_family(rank)
        label = f"synthetic rank {rank}"
        direct = wonderful_sum(family)
        series = _series_orbit_sum(family, depth)
        window = {k: direct.coeff(k) for k in series}
        out.append(
            _flag(
                "wonderful.series-form",
                f"{label} to t^-{depth}",
                series == window,
            )
        )
    return out


# ---------------------------------------------------------------------------
# Arc isotropy witnesses
# ---------------------------------------------------------------------------


def _witness_relations(matrix: arcjets.SeriesMatrix) -> tuple[bool, bool, bool]:
    (a, b), (c, d) = matrix.entries
    one = TruncSeries.constant(1)
    t2 = TruncSeries.monomial(1, 2)
    return (
        b.is_zero(),
        (a * d - one).is_zero(),
        (a - d - t2 * c).is_zero(),
    )


def suite_arcs(order: int = ARC_ORDER) -> list[CheckResult]:
    out = []
    curves = arcjets.fixed_point_curves(order)
    for sign in (1, -1):
        for c0 in range(-3, 4):
            label = f"sign={sign:+d} c0={c0} order={order}"
            try:
                witness = arcjets.isotropy_witness(sign, c0, order)
            except ToolkitError as exc:
                out.append(_error_row("arcs.witness", label, exc))
                continue
            no_b, unit_det, string_eq = _witness_relations(witness)
            out.append(
                _flag(
                    "arcs.relations",
                    label,
                    no_b and unit_det and string_eq,
                    f"(b=0 {no_b}, ad=1 {unit_det}, a-d=t^2c {string_eq})",
                )
            )
            fixes = all(
                arcjets.projectively_fixes(witness, curve) for curve in curves
            )
            out.append(_flag("arcs.fixes-curves", label, fixes))
            try:
                limit = arcjets.limit_at_zero(witness)
                ok = arcjets.in_limit_group(limit) and limit[0][0] == sign and limit[
                    1
                ][0] == Fraction(c0)
                out.append(_flag("arcs.limit", label, ok, f"(limit {limit})"))
            except ToolkitError as exc:
                out.append(_error_row("arcs.limit", label, exc))
    # A corrupted witness must fail the projective fixing test.
    base = arcjets.isotropy_witness(1, 2, order)
    (a, _), (c, d) = base.entries
    corrupted = arcjets.SeriesMatrix.of(
        [[a, TruncSeries.monomial(1, 1, order)], [c, d]]
    )
    moved = not all(
        arcjets.projectively_fixes(corrupted, curve) for curve in curves
    )
    out.append(_flag("arcs.corrupted-witness-moves", "b(t)=t", moved))
    return out


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def run_suite(
    name: str,
    n: int | None = None,
    catalog_path: str | None = None,
) -> list[CheckResult]:
    """Run one named suite (or ``all``) and return its rows."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name == "rankone":
        return suite_rankone(catalog_path)
    if name == "levifamily":
        return suite_levifamily(n or LEVI_FAMILY_DEFAULT_N)
    if name == "sl2cubed":
        return suite_sl2cubed(catalog_path)
    if name == "wonderful":
        return suite_wonderful(catalog_path)
    if name == "arcs":
        return suite_arcs()
    rows: list[CheckResult] = []
    for sub in ("rankone", "levifamily", "sl2cubed", "wonderful", "arcs"):
        rows.extend(run_suite(sub, n=n, catalog_path=catalog_path))
    return rows
