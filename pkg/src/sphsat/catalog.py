"""Machine-readable dataset of rank-one spaces and worked satellite families.

The shipped data file is the single source of the polynomial constants
used by the verification suites; nothing in test logic hard-codes them.
Parameterized entries store polynomial templates in the expression
grammar of :mod:`sphsat.exactpoly` (for example ``t^(n-1)*(t^n - 1)/(t - 1)``)
and are instantiated at load or on demand; every quotient must clear
exactly, and every entry is invariant-checked before it is returned, so a
corrupted data file fails loudly with the entry and field named.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from .exactpoly import (
    LaurentPoly,
    NotDivisible,
    PolyParseError,
    ToolkitError,
    exact_div,
    parse_int,
    parse_poly,
)
from .poincare import PoincareRecord, ratio_r
from .rootsys import (
    LeviSubset,
    RootSystem,
    flag_poincare_degrees,
    flag_poincare_heights,
    parse_root_system,
    positive_roots,
    support,
)

_T_MINUS_1 = LaurentPoly.t() - LaurentPoly.one()


class ParseError(ToolkitError):
    """The catalog file is not readable JSON."""


class SchemaError(ToolkitError):
    """The catalog file violates the expected structure."""


class InvariantViolation(ToolkitError):
    """An entry's polynomial data contradicts a structural invariant."""


class MissingParameter(ToolkitError):
    """A parameterized entry was requested without its parameter."""


class OutOfRange(ToolkitError):
    """A parameter lies outside the documented bounds."""


@dataclass(frozen=True)
class ParameterSpec:
    name: str
    default: int
    min: int
    max: int


@dataclass(frozen=True)
class ClosedOrbit:
    """Root-system data recomputing the degeneration polynomial."""

    root_system: RootSystem
    levi: LeviSubset


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    row: str | None
    description: str
    group: str
    subgroup: str
    record: PoincareRecord
    connected_subgroup: bool | None
    closed_orbit: ClosedOrbit | None
    family: dict[frozenset[int], LaurentPoly] | None
    wonderful_px: LaurentPoly | None
    parameter: ParameterSpec | None
    parameter_value: int | None


def _schema_fail(entry_id: str, field: str, message: str):
    raise SchemaError(f"entry {entry_id!r}, field {field!r}: {message}")


def _resolve_root_system(template: str, env: Mapping[str, int]) -> RootSystem:
    """Resolve a descriptor template like "A{n-1}" or "C{n}" or "A1xA1"."""
    parts = []
    for piece in template.split("x"):
        match = re.fullmatch(r"\s*([A-Ga-g])\{([^}]*)\}\s*", piece)
        if match:
            rank = parse_int(match.group(2), env)
            parts.append(f"{match.group(1).upper()}{rank}")
        else:
            parts.append(piece.strip())
    return parse_root_system("x".join(parts))


def _resolve_levi(template: str, env: Mapping[str, int]) -> frozenset[int]:
    """Resolve a Levi template: comma list of indices or ``a..b`` ranges."""
    out: set[int] = set()
    text = template.strip()
    if not text:
        return frozenset()
    for piece in text.split(","):
        if ".." in piece:
            lo_text, hi_text = piece.split("..", 1)
            lo = parse_int(lo_text, env)
            hi = parse_int(hi_text, env)
            out.update(range(lo, hi + 1))
        else:
            out.add(parse_int(piece, env))
    return frozenset(out)


def _parse_subset_key(key: str) -> frozenset[int]:
    key = key.strip()
    if not key:
        return frozenset()
    return frozenset(int(piece) for piece in key.split(","))


def _build_entry(raw: dict, n_value: int | None) -> CatalogEntry:
    entry_id = raw.get("id", "<missing id>")
    parameter = None
    env: dict[str, int] = {}
    if "parameter" in raw:
        spec = raw["parameter"]
        try:
            parameter = ParameterSpec(
                name=str(spec["name"]),
                default=int(spec["default"]),
                min=int(spec["min"]),
                max=int(spec["max"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            _schema_fail(entry_id, "parameter", str(exc))
        if n_value is None:
            n_value = parameter.default
        if not parameter.min <= n_value <= parameter.max:
            raise OutOfRange(
                f"entry {entry_id!r}: {parameter.name} = {n_value} outside "
                f"[{parameter.min}, {parameter.max}]"
            )
        env[parameter.name] = n_value
    elif n_value is not None:
        raise OutOfRange(f"entry {entry_id!r} takes no parameter")

    def poly_field(field: str, required: bool = True) -> LaurentPoly | None:
        if field not in raw:
            if required:
                _schema_fail(entry_id, field, "missing")
            return None
        try:
            return parse_poly(str(raw[field]), env)
        except (PolyParseError, NotDivisible) as exc:
            raise InvariantViolation(
                f"entry {entry_id!r}, field {field!r}: {exc}"
            ) from exc

    def int_field(field: str) -> int | None:
        if field not in raw:
            return None
        try:
            return parse_int(str(raw[field]), env)
        except PolyParseError as exc:
            raise InvariantViolation(
                f"entry {entry_id!r}, field {field!r}: {exc}"
            ) from exc

    for field in ("id", "kind", "description", "group", "subgroup", "rank"):
        if field not in raw:
            _schema_fail(entry_id, field, "missing")
    kind = str(raw["kind"])
    if kind not in ("rankone", "family"):
        _schema_fail(entry_id, "kind", f"unknown kind {kind!r}")
    rank = int(raw["rank"])

    p_gh = poly_field("p_gh")
    p_gh_empty = poly_field("p_gh_empty")
    r_empty = poly_field("r_empty", required=False)
    wonderful_px = poly_field("wonderful_px", required=False)
    try:
        record = PoincareRecord(
            label=entry_id,
            p_gh=p_gh,
            p_gh_empty=p_gh_empty,
            r_empty=r_empty,
            rank=rank,
            u_g=int_field("u_g"),
            u_h=int_field("u_h"),
            r_g=int_field("r_g"),
            r_h=int_field("r_h"),
        )
    except ValueError as exc:
        raise InvariantViolation(f"entry {entry_id!r}: {exc}") from exc

    closed_orbit = None
    if "closed_orbit" in raw:
        spec = raw["closed_orbit"]
        try:
            rs = _resolve_root_system(str(spec["root_system"]), env)
            levi = LeviSubset.of(rs, _resolve_levi(str(spec["levi"]), env))
        except (KeyError, TypeError, ToolkitError) as exc:
            _schema_fail(entry_id, "closed_orbit", str(exc))
        closed_orbit = ClosedOrbit(root_system=rs, levi=levi)

    family = None
    if "family" in raw:
        family = {}
        for key, text in raw["family"].items():
            try:
                family[_parse_subset_key(key)] = parse_poly(str(text), env)
            except (ValueError, PolyParseError, NotDivisible) as exc:
                _schema_fail(entry_id, f"family[{key!r}]", str(exc))

    connected = raw.get("connected_subgroup")
    entry = CatalogEntry(
        id=entry_id,
        kind=kind,
        row=str(raw["row"]) if "row" in raw else None,
        description=str(raw["description"]),
        group=str(raw["group"]),
        subgroup=str(raw["subgroup"]),
        record=record,
        connected_subgroup=bool(connected) if connected is not None else None,
        closed_orbit=closed_orbit,
        family=family,
        wonderful_px=wonderful_px,
        parameter=parameter,
        parameter_value=n_value,
    )
    _check_entry_invariants(entry)
    return entry


def _check_entry_invariants(entry: CatalogEntry) -> None:
    rec = entry.record
    if rec.rank == 1:
        try:
            exact_div(rec.p_gh_empty, _T_MINUS_1)
        except NotDivisible as exc:
            raise InvariantViolation(
                f"entry {entry.id!r}, field 'p_gh_empty': not divisible by (t - 1)"
            ) from exc
    if rec.r_empty is not None:
        try:
            computed = ratio_r(rec.p_gh_empty, rec.p_gh)
        except ToolkitError as exc:
            raise InvariantViolation(
                f"entry {entry.id!r}, field 'r_empty': ratio does not clear: {exc}"
            ) from exc
        if computed != rec.r_empty:
            raise InvariantViolation(
                f"entry {entry.id!r}, field 'r_empty': stored {rec.r_empty} "
                f"but division gives {computed}"
            )
    if entry.closed_orbit is not None:
        flag = flag_poincare_degrees(
            entry.closed_orbit.root_system, entry.closed_orbit.levi
        )
        if _T_MINUS_1 * flag != rec.p_gh_empty:
            raise InvariantViolation(
                f"entry {entry.id!r}, field 'closed_orbit': (t - 1) times the "
                f"flag polynomial is {_T_MINUS_1 * flag}, not {rec.p_gh_empty}"
            )
    if entry.family is not None:
        universe = frozenset(range(1, rec.rank + 1))
        expected = 2**rec.rank
        if len(entry.family) != expected:
            raise InvariantViolation(
                f"entry {entry.id!r}, field 'family': {len(entry.family)} members, "
                f"expected {expected}"
            )
        for subset in entry.family:
            if not subset <= universe:
                raise InvariantViolation(
                    f"entry {entry.id!r}, field 'family': subset {sorted(subset)} "
                    f"outside 1..{rec.rank}"
                )
        if entry.family[frozenset()] != rec.p_gh_empty:
            raise InvariantViolation(
                f"entry {entry.id!r}, field 'family': empty-subset member "
                "differs from p_gh_empty"
            )
        if entry.family[universe] != rec.p_gh:
            raise InvariantViolation(
                f"entry {entry.id!r}, field 'family': full-subset member "
                "differs from p_gh"
            )


def _read_raw(path: str | None) -> list[dict]:
    if path is None:
        text = (
            resources.files("sphsat").joinpath("data/rank_one.json").read_text("utf-8")
        )
        source = "<packaged catalog>"
    else:
        source = path
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    if not text.strip():
        return []
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc}") from exc
    if not isinstance(document, dict) or "entries" not in document:
        raise SchemaError(f"{source}: expected an object with an 'entries' list")
    entries = document["entries"]
    if not isinstance(entries, list):
        raise SchemaError(f"{source}: 'entries' must be a list")
    return entries


def load(path: str | None = None) -> list[CatalogEntry]:
    """Load and validate the catalog (the packaged one when path is None).

    Parameterized entries are instantiated at their default parameter;
    use :func:`rank_one_row` or :func:`entry_by_id` for other values.
    An empty file yields an empty list; any malformed entry fails the
    whole load with the entry and field named.
    """
    out = []
    seen = set()
    for raw in _read_raw(path):
        if not isinstance(raw, dict):
            raise SchemaError(f"entry #{len(out) + 1} is not an object")
        entry = _build_entry(raw, None)
        if entry.id in seen:
            raise SchemaError(f"duplicate entry id {entry.id!r}")
        seen.add(entry.id)
        out.append(entry)
    return out


def _find_raw(predicate, description: str, path: str | None = None) -> dict:
    for raw in _read_raw(path):
        if isinstance(raw, dict) and predicate(raw):
            return raw
    raise SchemaError(f"no catalog entry for {description}")


def entry_by_id(entry_id: str, n: int | None = None, path: str | None = None) -> CatalogEntry:
    """One entry by id, instantiated at ``n`` when parameterized.

    Requesting a parameterized entry without ``n`` raises
    :class:`MissingParameter`; bounds violations raise :class:`OutOfRange`.
    """
    raw = _find_raw(lambda r: r.get("id") == entry_id, f"id {entry_id!r}", path)
    if "parameter" in raw and n is None:
        raise MissingParameter(
            f"entry {entry_id!r} needs parameter {raw['parameter']['name']!r}"
        )
    return _build_entry(raw, n)


def rank_one_row(row: str | int, n: int | None = None, path: str | None = None) -> CatalogEntry:
    """One row of the rank-one dataset by row label ("1" ... "15", "7a", ...)."""
    label = str(row)
    raw = _find_raw(
        lambda r: r.get("kind") == "rankone" and str(r.get("row")) == label,
        f"rank-one row {label!r}",
        path,
    )
    if "parameter" in raw and n is None:
        raise MissingParameter(f"rank-one row {label!r} needs a parameter value")
    return _build_entry(raw, n)


def rank_one_rows(path: str | None = None) -> list[str]:
    """All rank-one row labels in file order."""
    return [
        str(raw["row"])
        for raw in _read_raw(path)
        if isinstance(raw, dict) and raw.get("kind") == "rankone"
    ]


def levi_ratio_family(n: int, subset: frozenset[int] | set[int]) -> LaurentPoly:
    """Satellite ratio of the type-A group family, by the height product.

    For the rank n - 1 system of SL(n) and a subset I of simple roots,
    returns the flag polynomial of the corresponding parabolic quotient
    shifted by the inverse of its dimension, a polynomial in the inverse
    variable with constant term 1.
    """
    if not 2 <= n <= 8:
        raise OutOfRange(f"n = {n} outside [2, 8]")
    rs = parse_root_system(f"A{n - 1}")
    levi = LeviSubset.of(rs, frozenset(subset))
    outside = [
        root for root in positive_roots(rs) if not support(root) <= levi.subset
    ]
    flag = flag_poincare_heights(rs, levi)
    return flag.shift(-len(outside))
