"""Command-line surface: satellites, poincare, faces and verify.

Exit codes: 0 on success, 1 on a failed check or invalid input data,
2 on internal errors (and argparse usage errors).  Output is
deterministic; pass --format json for machine-readable reports.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, verify
from .exactpoly import ToolkitError, format_poly
from .latcone import enumerate_faces, load_cone
from .poincare import ratio_r
from .rootsys import (
    LeviSubset,
    find_levi_of_type,
    flag_poincare_degrees,
    parse_levi_indices,
    parse_root_system,
)
from .sphdata import datum_to_json, load_datum, satellite_datum


def _emit(payload, args) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _emit_text(payload)


def _emit_text(payload, indent: str = "") -> None:
    if isinstance(payload, dict):
        for key in payload:
            value = payload[key]
            if isinstance(value, (dict, list)) and not _is_scalar_list(value):
                print(f"{indent}{key}:")
                _emit_text(value, indent + "  ")
            elif isinstance(value, list):
                print(f"{indent}{key}: {', '.join(str(v) for v in value)}")
            else:
                print(f"{indent}{key}: {value}")
    elif isinstance(payload, list):
        for value in payload:
            _emit_text(value, indent)
            if isinstance(value, dict):
                print()
    else:
        print(f"{indent}{payload}")


def _is_scalar_list(value) -> bool:
    return isinstance(value, list) and not any(
        isinstance(v, (dict, list)) for v in value
    )


def cmd_satellites(args) -> int:
    datum = load_datum(args.datum)
    if args.subset is not None:
        names = [n for n in args.subset.split(",") if n] if args.subset else []
        result = satellite_datum(datum, names)
        _emit(datum_to_json(result), args)
        return 0
    names = list(datum.root_names)
    payload = []
    for size in range(len(names) + 1):
        from itertools import combinations

        for combo in combinations(names, size):
            entry = datum_to_json(satellite_datum(datum, combo))
            entry["subset"] = list(combo)
            payload.append(entry)
    _emit(payload, args)
    return 0


def _resolve_levi(rs, text: str) -> LeviSubset:
    if text.endswith("-embedding"):
        return find_levi_of_type(rs, text[: -len("-embedding")])
    return LeviSubset.of(rs, parse_levi_indices(text))


def cmd_poincare(args) -> int:
    if args.mode == "flag":
        rs = parse_root_system(args.type)
        levi = _resolve_levi(rs, args.levi)
        poly = flag_poincare_degrees(rs, levi)
        _emit(
            {
                "root_system": rs.descriptor(),
                "levi": sorted(levi.subset),
                "polynomial": format_poly(poly),
            },
            args,
        )
        return 0
    entry = catalog.entry_by_id(args.id, args.n, args.catalog)
    rec = entry.record
    payload = {
        "id": entry.id,
        "description": entry.description,
        "p_gh": format_poly(rec.p_gh),
        "p_gh_empty": format_poly(rec.p_gh_empty),
        "r_empty": format_poly(ratio_r(rec.p_gh_empty, rec.p_gh)),
    }
    if entry.parameter_value is not None:
        payload["parameter"] = entry.parameter_value
    _emit(payload, args)
    return 0


def cmd_faces(args) -> int:
    cone = load_cone(args.cone)
    payload = [
        {
            "subset": sorted(i + 1 for i in face.subset),
            "dim": face.dim(),
        }
        for face in enumerate_faces(cone)
    ]
    _emit(payload, args)
    return 0


def cmd_verify(args) -> int:
    rows = verify.run_suite(args.suite, n=args.n, catalog_path=args.catalog)
    failed = [row for row in rows if not row.passed]
    if args.format == "json":
        print(json.dumps([row.to_json() for row in rows], indent=2, sort_keys=True))
    else:
        for row in rows:
            mark = "PASS" if row.passed else "FAIL"
            print(f"{mark} {row.check} [{row.input}] expected {row.expected}, got {row.computed}")
        print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphsat",
        description=(
            "Exact computations with satellites of spherical subgroups: "
            "spherical data, valuation-cone faces and virtual Poincare "
            "polynomials."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sat = sub.add_parser(
        "satellites", help="satellite data of a spherical datum", parents=[common]
    )
    p_sat.add_argument("--datum", required=True, help="path to a datum JSON file")
    p_sat.add_argument(
        "--I",
        dest="subset",
        default=None,
        help="comma-separated defining-vector names; omit to enumerate all",
    )
    p_sat.set_defaults(func=cmd_satellites)

    p_poin = sub.add_parser("poincare", help="flag polynomials and catalog rows")
    poin_sub = p_poin.add_subparsers(dest="mode", required=True)
    p_flag = poin_sub.add_parser("flag", help="flag polynomial of G/P", parents=[common])
    p_flag.add_argument("--type", required=True, help='root system, e.g. "F4"')
    p_flag.add_argument(
        "--levi",
        default="",
        help='simple-root indices "1,3", a named type "B3-embedding", or ""',
    )
    p_flag.set_defaults(func=cmd_poincare, mode="flag")
    p_cat = poin_sub.add_parser("catalog", help="polynomials of a catalog entry", parents=[common])
    p_cat.add_argument("id", help='entry id, e.g. "rankone.4"')
    p_cat.add_argument("--n", type=int, default=None, help="parameter value")
    p_cat.add_argument("--catalog", default=None, help="alternate catalog path")
    p_cat.set_defaults(func=cmd_poincare, mode="catalog")

    p_faces = sub.add_parser("faces", help="face lattice of a valuation cone", parents=[common])
    p_faces.add_argument("--cone", required=True, help="path to a cone JSON file")
    p_faces.set_defaults(func=cmd_faces)

    p_verify = sub.add_parser("verify", help="run a verification suite", parents=[common])
    p_verify.add_argument("suite", choices=verify.SUITES)
    p_verify.add_argument(
        "--n", type=int, default=None, help="parameter for the levifamily suite"
    )
    p_verify.add_argument("--catalog", default=None, help="alternate catalog path")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure contract
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
