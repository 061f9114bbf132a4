"""Command-line front end.

Exit codes: 0 on success, 2 when a validation or exactness check fails (the
report is still printed), 1 on malformed input or arguments.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources

from .chain import ContainmentError
from .complex import validate_space
from .homology import (
    cohomology_betti,
    homology_summary,
    interaction_euler,
    les_check,
    relative_betti,
    wu_characteristic,
)
from .io import (
    SchemaError,
    complex_from_json,
    dumps,
    load_json,
    map_from_json,
    scalar_to_json,
    space_from_json,
)
from .linalg import QQ, ZZ, parse_ring, rank
from .maps import InvalidMapError, induced_chain_map, induced_homology_map, validate_map
from .pointcloud import ScaleSweep, betti_curve, format_scale, read_point_csv

THREADS_ENV = "INTERHOM_THREADS"

# subcommand -> schema file under interhom/schemas (validation failures use "report")
OUTPUT_SCHEMAS = {
    "validate": "report",
    "map-check": "report",
    "betti": "summary",
    "homology": "summary",
    "cohomology": "summary",
    "relative": "summary",
    "wu": "wu",
    "euler": "euler",
    "les-check": "exactness",
    "map-induced": "map_induced",
    "rips-curve": "rips_curve",
}


def schema_path(name: str):
    return resources.files("interhom") / "schemas" / f"{name}.schema.json"


class UsageError(Exception):
    pass


class _Invalid(Exception):
    """Carries a failed validation report out of a subcommand."""

    def __init__(self, report: dict):
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _pmax(text: str) -> int | None:
    if text == "full":
        return None
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative or 'full'")
    return value


def _ring(args, allow_z: bool = True):
    if args.prime is not None and args.field != "gfp":
        raise UsageError("--prime is only valid with --field gfp")
    try:
        ring = parse_ring(args.field, args.prime)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if ring == ZZ and not allow_z:
        raise UsageError(f"{args.command} needs field coefficients (q or gfp)")
    return ring


def _space(path, field="space"):
    space = space_from_json(load_json(path), field)
    report = validate_space(space)
    return space, report


def _checked_space(path, field="space"):
    space, report = _space(path, field)
    if not report.valid:
        raise _Invalid(report.to_dict())
    return space


def cmd_validate(args):
    _, report = _space(args.space)
    return (0 if report.valid else 2), report.to_dict()


def cmd_betti(args):
    ring = _ring(args)
    space = _checked_space(args.space)
    return 0, homology_summary(space, args.pmax, ring).to_dict()


def cmd_cohomology(args):
    ring = _ring(args, allow_z=False)
    space = _checked_space(args.space)
    return 0, cohomology_betti(space, args.pmax, ring).to_dict()


def cmd_wu(args):
    return 0, {"wu": wu_characteristic(complex_from_json(load_json(args.complex)))}


def cmd_euler(args):
    return 0, {"euler": interaction_euler(_checked_space(args.space))}


def _pair(args):
    space = _checked_space(args.space)
    sub = _checked_space(args.sub, "sub")
    return space, sub


def cmd_relative(args):
    ring = _ring(args)
    space, sub = _pair(args)
    return 0, relative_betti(space, sub, args.pmax, ring).to_dict()


def cmd_les_check(args):
    ring = _ring(args, allow_z=False)
    space, sub = _pair(args)
    report = les_check(space, sub, args.pmax, ring)
    return (0 if report.exact else 2), report.to_dict()


def cmd_map_check(args):
    m = map_from_json(load_json(args.map))
    report = validate_map(m)
    for key, space in (("source", m.source), ("target", m.target)):
        for v in validate_space(space).violations:
            report.add(f"{key}-{v['kind']}", **{k: x for k, x in v.items() if k != "kind"})
    return (0 if report.valid else 2), report.to_dict()


def cmd_map_induced(args):
    m = map_from_json(load_json(args.map))
    report = validate_map(m)
    if not report.valid:
        raise _Invalid(report.to_dict())
    if args.level == "chain":
        ring = None
        mat = induced_chain_map(m, args.degree)
    else:
        ring = _ring(args, allow_z=False)
        mat = induced_homology_map(m, args.degree, ring)
    dense = [[scalar_to_json(x) for x in row] for row in mat.to_dense()]
    return 0, {
        "degree": args.degree,
        "level": args.level,
        "ring": ring.name if ring else "Z",
        "shape": [mat.nrows, mat.ncols],
        "matrix": dense,
        "rank": rank(mat, ring or QQ),
    }


def cmd_rips_curve(args):
    ring = _ring(args, allow_z=False)
    try:
        cloud = read_point_csv(args.points)
    except OSError as exc:
        raise SchemaError(args.points, f"cannot read file ({exc.strerror})") from None
    except ValueError as exc:
        raise SchemaError(args.points, str(exc)) from None
    try:
        sweep = ScaleSweep(tuple(s for s in args.scales.split(",") if s.strip()),
                           args.pmax, args.mode, args.max_dim)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--scales/--mode: {exc}") from None
    n_jobs = int(os.environ.get(THREADS_ENV, "1") or 1)
    rows = betti_curve(cloud, sweep, ring, n_jobs=n_jobs)
    if args.format == "tsv":
        lines = ["scale\tdegree\tbetti"]
        lines += [f"{format_scale(r.scale)}\t{r.degree}\t{r.betti}" for r in rows]
        return 0, "\n".join(lines)
    return 0, {
        "ring": ring.name,
        "mode": args.mode,
        "max_dim": args.max_dim,
        "rows": [{"scale": format_scale(r.scale), "degree": r.degree, "betti": r.betti}
                 for r in rows],
    }


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="interhom", description="Interaction homology of covered simplicial complexes.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    def field_opts(p, default="q"):
        p.add_argument("--field", choices=["q", "gfp", "z"], default=default)
        p.add_argument("--prime", type=int, default=None)

    p = add("validate", cmd_validate, "check a space's covering")
    p.add_argument("--space", required=True)

    for name, func, default, text in (
        ("betti", cmd_betti, "q", "interaction Betti numbers"),
        ("homology", cmd_betti, "z", "integer homology with torsion"),
        ("cohomology", cmd_cohomology, "q", "interaction cohomology dimensions"),
    ):
        p = add(name, func, text)
        p.add_argument("--space", required=True)
        p.add_argument("--pmax", type=_pmax, default=None)
        field_opts(p, default)

    p = add("wu", cmd_wu, "Wu characteristic of a complex")
    p.add_argument("--complex", required=True)

    p = add("euler", cmd_euler, "alternating count of interacting tuples")
    p.add_argument("--space", required=True)

    for name, func, text in (("relative", cmd_relative, "relative Betti numbers"),
                             ("les-check", cmd_les_check, "exactness of the long exact sequence")):
        p = add(name, func, text)
        p.add_argument("--space", required=True)
        p.add_argument("--sub", required=True)
        p.add_argument("--pmax", type=int, default=2)
        field_opts(p)

    p = add("map-check", cmd_map_check, "validate an interaction simplicial map")
    p.add_argument("--map", required=True)

    p = add("map-induced", cmd_map_induced, "induced chain or homology map")
    p.add_argument("--map", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--level", choices=["chain", "homology"], default="homology")
    field_opts(p)

    p = add("rips-curve", cmd_rips_curve, "interaction Betti curve of a point cloud")
    p.add_argument("--points", required=True)
    p.add_argument("--scales", required=True, help="comma-separated, strictly increasing")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--pmax", type=_pmax, default=2)
    p.add_argument("--mode", default="self:2", help="by_label or self:N")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    field_opts(p)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        code, report = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except (SchemaError, ContainmentError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    except InvalidMapError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except _Invalid as exc:
        code, report = 2, exc.report
    text = report if isinstance(report, str) else dumps(report)
    print(text, file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
