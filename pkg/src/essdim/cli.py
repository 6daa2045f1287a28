"""Command-line interface: ``essdim {bounds,certify,weyl,polys,stabilizer}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import edbounds
from .genfree.certificates import STRATEGIES, certify_half_spin, certify_minuscule, certify_short
from .genfree.polys import agl1_generic_check
from .genfree.projs import certify_projs
from .rootsys import DomainError, DynkinType, build
from .weyl import Refusal, closed_form_order, kernel_mod_p, weyl_group

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_REFUSED = 0, 2, 3, 4

ISOGENY_ALIASES = {
    "adj": "adjoint",
    "adjoint": "adjoint",
    "sc": "simply-connected",
    "simply-connected": "simply-connected",
    "so": "SO",
    "hspin": "HSpin",
}


class UsageError(Exception):
    pass


def _emit(rows: list[dict], fmt: str, columns: list[str], out) -> None:
    if fmt == "json":
        json.dump(rows if len(rows) != 1 else rows[0], out, sort_keys=True, indent=2)
        out.write("\n")
        return
    flat = [{c: _cell(r.get(c)) for c in columns} for r in rows]
    if fmt == "csv":
        w = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
        return
    widths = {c: max([len(c)] + [len(r[c]) for r in flat]) for c in columns}
    out.write("  ".join(c.ljust(widths[c]) for c in columns).rstrip() + "\n")
    for r in flat:
        out.write("  ".join(r[c].ljust(widths[c]) for c in columns).rstrip() + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


# -- subcommands -----------------------------------------------------------


def _descriptor(args) -> edbounds.GroupDescriptor | None:
    if args.group:
        return edbounds.GroupDescriptor.parse(args.group, args.char)
    if args.family:
        n = args.n
        if n is None:
            raise UsageError("--family needs --n")
        if args.family.lower() in ("sp", "psp"):
            n *= 2
        return edbounds.GroupDescriptor.named(args.family, n, args.char, args.m)
    if args.type:
        iso = ISOGENY_ALIASES.get(args.isogeny.lower())
        if iso is None:
            raise UsageError(f"unknown isogeny {args.isogeny!r}")
        return edbounds.GroupDescriptor(DynkinType.parse(args.type), iso, args.char)
    return None


def cmd_bounds(args, out) -> int:
    d = _descriptor(args)
    groups = [d] if d else edbounds.simple_descriptors(2, 8, args.char)
    rows, healthy = [], True
    for g in groups:
        report = edbounds.best_bound(g)
        audit = edbounds.audit(g)
        healthy &= audit["replay"] and audit["big_o"]
        row = report.to_dict()
        row["dim"] = edbounds.group_dim(g)
        row["replayed"] = audit["replay"]
        if args.all_routes and d:
            row["candidates"] = [c.to_dict() for c in edbounds.candidates(g)]
        rows.append(row)
    cols = ["group", "char", "dim", "kind", "value", "lower", "route", "certificates"]
    _emit(rows, args.format, cols, out)
    return EXIT_OK if healthy else EXIT_FAIL


def cmd_certify(args, out) -> int:
    if args.limit is not None and args.limit < 1:
        raise UsageError("--limit must be at least 1")
    kw = {"limit": args.limit, "trials": args.trials, "seed": args.seed}
    if args.module == "short":
        cert = certify_short(_need(args.type, "--type"), args.strategy, **kw)
    elif args.module == "minuscule":
        cert = certify_minuscule(_need(args.type, "--type"), _need(args.weight, "--weight"), args.strategy, **kw)
    elif args.module == "half-spin":
        cert = certify_half_spin(_need(args.n, "--n"), args.strategy, **kw)
    else:
        cert = certify_projs(_need(args.n, "--n"))
    row = cert.to_dict()
    _emit([row], args.format, ["id", "verdict", "strategy", "kernel_rank", "checked", "bound", "witnesses"], out)
    return EXIT_OK if cert.passed else EXIT_FAIL


def _need(value, flag):
    if value is None:
        raise UsageError(f"this command needs {flag}")
    return value


def cmd_weyl(args, out) -> int:
    rs = build(args.type)
    if args.mod is None:
        g = weyl_group(rs)
        row = {"type": str(rs.type), "order": g.order, "closed_form": closed_form_order(rs), "roots": len(rs.roots)}
        cols = ["type", "order", "closed_form", "roots"]
    else:
        h = kernel_mod_p(rs, args.mod, include_minus_one=not args.exclude_minus_one)
        stab = edbounds.adjoint_stabilizer(edbounds.GroupDescriptor(rs.type, "adjoint", args.mod))
        row = {"type": str(rs.type), "p": args.mod, "order": h.order, "structure": h.structure,
               "elementary_abelian_2": h.elementary_abelian_2,
               "order_in_W": stab["component_order"], "adjoint_component_group": stab["component_group"]}
        cols = ["type", "p", "order", "structure", "elementary_abelian_2", "order_in_W", "adjoint_component_group"]
    _emit([row], args.format, cols, out)
    return EXIT_OK


def cmd_polys(args, out) -> int:
    row = agl1_generic_check(args.n, args.q, args.samples, args.seed, args.mode)
    cols = ["n", "q", "p", "mode", "samples", "seed", "trivial", "fixed_by_translation", "fraction_trivial", "degenerate"]
    _emit([row], args.format, cols, out)
    return EXIT_OK


def cmd_stabilizer(args, out) -> int:
    d = _descriptor(args)
    groups = [d] if d else [g for g in edbounds.simple_descriptors(1, 8, args.char) if g.isogeny == "adjoint"]
    rows = [edbounds.adjoint_stabilizer(g) for g in groups]
    _emit(rows, args.format, ["group", "char", "component_order", "component_group", "connected", "acts_by_inversion"], out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _group_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", help="group name, e.g. E6sc, PGL5, SL6/mu2, PSp8, HSpin12")
    p.add_argument("--type", help="Dynkin type, e.g. E7")
    p.add_argument("--isogeny", default="adjoint", help="adjoint|sc|SO|HSpin (with --type)")
    p.add_argument("--family", help="PGL|SL|GL|Sp|PSp|SO|Spin|PSO|HSpin (with --n)")
    p.add_argument("--n", type=int, help="matrix size; for Sp/PSp the rank, so PSp --n 4 is PSp_8")
    p.add_argument("--m", type=int, default=1, help="order of the central mu_m for SL and GL quotients")
    p.add_argument("--char", type=int, default=0, help="characteristic of the base field (0 or a prime)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")

    parser = argparse.ArgumentParser(prog="essdim", description="Essential dimension bounds and their certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="best upper bound with provenance (default: full table)")
    _group_args(p)
    p.add_argument("--all-routes", action="store_true", help="include every candidate chain (single group only)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("certify", parents=[common], help="generic freeness certificate for N(T)")
    p.add_argument("module", choices=("short", "minuscule", "half-spin", "projs"))
    p.add_argument("--type")
    p.add_argument("--weight", type=int, help="1-based index of the minuscule fundamental weight")
    p.add_argument("--n", type=int)
    p.add_argument("--strategy", choices=("auto",) + STRATEGIES, default="auto")
    p.add_argument("--limit", type=int, help="largest |W| swept exhaustively (default $ESSDIM_ENUM_LIMIT or 10^7)")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("weyl", parents=[common], help="Weyl group order, or the kernel of W on Q/pQ")
    p.add_argument("--type", required=True)
    p.add_argument("--mod", type=int, help="prime p")
    p.add_argument("--exclude-minus-one", action="store_true", help="drop -1 when p = 2")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("polys", parents=[common], help="AGL1 stabilizers of sampled polynomials over GF(q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("auto", "affine", "multiplicative"), default="auto")
    p.set_defaults(func=cmd_polys)

    p = sub.add_parser("stabilizer", parents=[common], help="generic stabilizer of the adjoint action")
    _group_args(p)
    p.set_defaults(func=cmd_stabilizer)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except Refusal as e:
        print(f"refused: {e}", file=sys.stderr)
        if e.alternatives:
            print(f"try --strategy {' or '.join(e.alternatives)}", file=sys.stderr)
        return EXIT_REFUSED
    except (DomainError, UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
