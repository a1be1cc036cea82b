"""Command-line interface.

Exit codes: 0 success / verified, 1 a checked claim was falsified, 2 usage
error (including the dimension guard).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from .grassmann import (
    Field,
    GrassmannianDesc,
    bordism_sw_vector,
    bounds,
    format_partition,
    nu,
    parse_partition,
    real,
    sp_pullback_closed_form,
    sp_pullback_via_newton,
)
from .independence import (
    METHODS,
    DimensionGuardError,
    enumerate_gd,
    fossum_check,
    proposition_matrix,
    split_even_odd,
    verify_theorem,
)

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _tsv(header: List[str], rows: List[List]) -> str:
    lines = ["\t".join(header)]
    lines += ["\t".join("" if v is None else str(v) for v in row) for row in rows]
    return "\n".join(lines)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _descriptor(args) -> GrassmannianDesc:
    return GrassmannianDesc(Field(args.field), args.k, args.n)


# -- subcommands -------------------------------------------------------------------


def cmd_nu(args) -> int:
    value = nu(args.m)
    if args.format == "json":
        print(dump_json({"m": args.m, "nu": value}))
    elif args.format == "tsv":
        print(_tsv(["m", "nu"], [[args.m, value]]))
    else:
        print(value)
    return EXIT_OK


def cmd_bounds(args) -> int:
    g = _descriptor(args)
    b = bounds(g)
    a, c = nu(g.N), nu(g.k)
    if args.format == "json":
        print(dump_json({"field": g.field.value, "k": g.k, "n": g.n, "bounds": b,
                         "nu_n_plus_k": a, "nu_k": c}))
    elif args.format == "tsv":
        print(_tsv(["field", "k", "n", "bounds", "nu_n_plus_k", "nu_k"],
                   [[g.field.value, g.k, g.n, _bool(b), a, c]]))
    else:
        rel = ">" if b else "<="
        print(f"bounds: {_bool(b)} (nu({g.N})={a} {rel} nu({g.k})={c})")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    fields = ("R",) if args.real_only else tuple(args.fields.split(","))
    try:
        fields = tuple(Field(f.strip()) for f in fields)
    except ValueError:
        raise UsageError(f"bad --fields {args.fields!r}") from None
    enum = enumerate_gd(args.dim, fields)
    rows = [
        {"field": g.field.value, "k": g.k, "n": g.n, "label": g.label(), "block": enum.block_of(i)}
        for i, g in enumerate(enum.members)
    ]
    if args.format == "json":
        print(dump_json({"dim": args.dim, "members": rows}))
    elif args.format == "tsv":
        print(_tsv(["field", "k", "n", "label", "block"],
                   [[r["field"], r["k"], r["n"], r["label"], r["block"] or "-"] for r in rows]))
    else:
        for r in rows:
            print(f"{r['label']}\t{r['block'] or '-'}")
    return EXIT_OK


def _vector_for(args):
    g = _descriptor(args)
    return g, bordism_sw_vector(g)


def cmd_sw_number(args) -> int:
    try:
        lam = parse_partition(args.partition)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = _descriptor(args)
    if sum(lam) != g.dim:
        raise UsageError(f"partition {args.partition} has weight {sum(lam)}, but dim {g.label()} = {g.dim}")
    _guard_vector(args, g.dim)
    _, vec = _vector_for(args)
    value = vec[lam]
    if args.format == "json":
        print(dump_json({"descriptor": g.to_text(), "partition": format_partition(lam), "value": value}))
    elif args.format == "tsv":
        print(_tsv(["descriptor", "partition", "value"], [[g.to_text(), format_partition(lam), value]]))
    else:
        print(value)
    return EXIT_OK


def _guard_vector(args, d: int) -> None:
    from .independence import DEFAULT_MAX_DIM

    if d > DEFAULT_MAX_DIM and not args.allow_large:
        raise DimensionGuardError(
            f"SW vector at d={d} exceeds the default limit d <= {DEFAULT_MAX_DIM}; pass --allow-large"
        )


def cmd_sw_vector(args) -> int:
    g = _descriptor(args)
    _guard_vector(args, g.dim)
    _, vec = _vector_for(args)
    entries = [(format_partition(lam), b) for lam, b in zip(vec.partitions, vec.bits)]
    if args.format == "json":
        print(dump_json({"descriptor": g.to_text(), "dim": vec.dimension, "bits": vec.bitstring(),
                         "entries": [{"partition": p, "value": b} for p, b in entries]}))
    elif args.format == "tsv":
        print(_tsv(["partition", "value"], [list(e) for e in entries]))
    else:
        for p, b in entries:
            print(f"{p}\t{b}")
    return EXIT_OK


def cmd_sp_check(args) -> int:
    g = real(args.k, args.n)
    ps = [args.p] if args.p else list(range(1, g.N + 1))
    rows = []
    for p in ps:
        closed = sp_pullback_closed_form(g, p)
        newton = sp_pullback_via_newton(g, p)
        rows.append({"p": p, "closed_form": str(closed), "newton": str(newton), "agree": closed == newton})
    ok = all(r["agree"] for r in rows)
    if args.format == "json":
        print(dump_json({"descriptor": g.to_text(), "checks": rows, "verified": ok}))
    elif args.format == "tsv":
        print(_tsv(["p", "closed_form", "newton", "agree"],
                   [[r["p"], r["closed_form"], r["newton"], _bool(r["agree"])] for r in rows]))
    else:
        for r in rows:
            print(f"S_{r['p']}: {r['closed_form']}  [{'ok' if r['agree'] else 'MISMATCH: ' + r['newton']}]")
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_prop_matrix(args) -> int:
    if args.dim % 2:
        raise UsageError("prop-matrix needs an even --dim")
    pm, enum = proposition_matrix(args.dim)
    odd, even = split_even_odd(enum)
    s = len(odd)
    tri = pm.is_lower_unitriangular(s)
    zero = pm.columns_zero(range(s, s + len(even)))
    ok = tri and zero
    col_labels = [g.label() for g in enum.real_members]
    if args.format == "json":
        print(dump_json({"dim": args.dim, "rows": [g.label() for g in odd], "cols": col_labels,
                         "matrix": pm.bitstrings(), "lower_unitriangular": tri, "e_columns_zero": zero}))
    elif args.format == "tsv":
        print(_tsv(col_labels, pm.to_lists()))
    else:
        print("\t" + "\t".join(col_labels))
        for g, row in zip(odd, pm.to_lists()):
            print(g.label() + "\t" + "\t".join(map(str, row)))
        print(f"lower unitriangular on O(d): {_bool(tri)}; E(d) columns zero: {_bool(zero)}")
    return EXIT_OK if ok else EXIT_FALSIFIED


def _report_text(r: dict) -> str:
    lines = [f"d={r['dim']} method={r['method']} members={len(r['members'])} rank={r['rank']} "
             f"verified={_bool(r['verified'])}"]
    lines += ["  " + s for s in r["steps"]]
    lines += ["  FAILED: " + f for f in r["failures"]]
    return "\n".join(lines)


def _report_tsv_rows(reports: List[dict]) -> str:
    header = ["dim", "method", "members", "distinct_classes", "rank", "verified"]
    rows = [[r["dim"], r["method"], len(r["members"]), r["distinct_classes"], r["rank"], _bool(r["verified"])]
            for r in reports]
    return _tsv(header, rows)


def cmd_verify(args) -> int:
    report = verify_theorem(args.dim, args.method, args.allow_large).to_dict(timing=not args.no_timing)
    if args.format == "json":
        print(dump_json(report))
    elif args.format == "tsv":
        print(_report_tsv_rows([report]))
    else:
        print(_report_text(report))
    return EXIT_OK if report["verified"] else EXIT_FALSIFIED


def _verify_one(job):
    d, method, allow_large, timing = job
    return verify_theorem(d, method, allow_large).to_dict(timing=timing)


def cmd_verify_range(args) -> int:
    dims = list(range(2, args.max_dim + 1, 2))
    if not args.allow_large:
        from .independence import DEFAULT_MAX_DIM

        if args.method != "matrix-induction" and args.max_dim > DEFAULT_MAX_DIM:
            raise DimensionGuardError(
                f"oracle at d={args.max_dim} exceeds the default limit d <= {DEFAULT_MAX_DIM}; pass --allow-large"
            )
    jobs = [(d, args.method, args.allow_large, not args.no_timing) for d in dims]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_one, jobs))
    else:
        reports = [_verify_one(j) for j in jobs]
    ok = all(r["verified"] for r in reports)
    if args.format == "json":
        print(dump_json({"max_dim": args.max_dim, "method": args.method, "reports": reports, "verified": ok}))
    elif args.format == "tsv":
        print(_report_tsv_rows(reports))
    else:
        for r in reports:
            print(_report_text(r))
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_fossum(args) -> int:
    if not args.k < args.n:
        raise UsageError("fossum needs k < n")
    if 4 * args.n * args.k > 24 and not args.allow_large:
        raise DimensionGuardError(f"fossum at d={4 * args.n * args.k} exceeds the default limit; pass --allow-large")
    ok = fossum_check(args.k, args.n)
    big = real(2 * args.k, 2 * args.n)
    small = real(args.k, args.n)
    if args.format == "json":
        print(dump_json({"k": args.k, "n": args.n, "lhs": big.to_text(), "rhs": small.to_text(),
                         "power": 4, "dim": big.dim, "agree": ok}))
    elif args.format == "tsv":
        print(_tsv(["k", "n", "dim", "agree"], [[args.k, args.n, big.dim, _bool(ok)]]))
    else:
        print(f"fossum: {_bool(ok)} ([{big.label()}] vs [{small.label()}]^4 in dimension {big.dim})")
    return EXIT_OK if ok else EXIT_FALSIFIED


# -- parser ------------------------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    def default(v):
        return argparse.SUPPRESS if suppress else v

    p.add_argument("--format", choices=("json", "tsv", "text"), default=default("text"))
    p.add_argument("--allow-large", action="store_true", default=default(False),
                   help="lift the d <= 24 guard on SW-vector computations")
    p.add_argument("--jobs", type=_positive, default=default(1), help="worker processes for verify-range")
    p.add_argument("--no-timing", action="store_true", default=default(False),
                   help="omit elapsed_ms from reports")


def _grassmann_args(p: argparse.ArgumentParser, with_field: bool = True) -> None:
    if with_field:
        p.add_argument("--field", choices=("R", "C", "H"), default="R")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grassbord",
        description="Mod-2 characteristic numbers of Grassmannians and their bordism independence.",
    )
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nu", parents=[common], help="2-adic valuation")
    p.add_argument("m", type=_positive)
    p.set_defaults(func=cmd_nu)

    p = sub.add_parser("bounds", parents=[common], help="Sankaran bounding criterion")
    _grassmann_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("enumerate", parents=[common], help="list the members of G(d)")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--fields", default="R,C,H")
    p.add_argument("--real-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sw-number", parents=[common], help="one Stiefel-Whitney number")
    _grassmann_args(p)
    p.add_argument("--partition", required=True, help='descending parts, e.g. "4,2,1,1"')
    p.set_defaults(func=cmd_sw_number)

    p = sub.add_parser("sw-vector", parents=[common], help="all Stiefel-Whitney numbers")
    _grassmann_args(p)
    p.set_defaults(func=cmd_sw_vector)

    p = sub.add_parser("sp-check", parents=[common], help="S_p pullback: closed form vs Newton route")
    _grassmann_args(p, with_field=False)
    p.add_argument("--p", type=_positive)
    p.set_defaults(func=cmd_sp_check)

    p = sub.add_parser("prop-matrix", parents=[common], help="f_l characteristic-number matrix")
    p.add_argument("--dim", type=_positive, required=True)
    p.set_defaults(func=cmd_prop_matrix)

    p = sub.add_parser("verify", parents=[common], help="verify independence of G(d)")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--method", choices=METHODS, default="both")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-range", parents=[common], help="verify every even d up to --max-dim")
    p.add_argument("--max-dim", type=_positive, required=True)
    p.add_argument("--method", choices=METHODS, default="both")
    p.set_defaults(func=cmd_verify_range)

    p = sub.add_parser("fossum", parents=[common], help="[G_2k(R^{2n+2k})] = [G_k(R^{n+k})]^4 check")
    _grassmann_args(p, with_field=False)
    p.set_defaults(func=cmd_fossum)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DimensionGuardError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
