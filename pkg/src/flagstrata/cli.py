"""Command-line entry point: ``flagstrata <verb> [options]``.

Output is JSON unless ``--tsv`` is given.  Exit codes: 0 success, 1 domain
error (a JSON error object is printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .census import (
    format_report,
    kgb_invariance,
    orbit_census,
    p2_census,
    stratum_census,
    verify_partition,
)
from .config import CapExceeded
from .exactfield import FieldError, make_field
from .flagvariety import FlagError, ProjPoint, flag_from_matrix
from .mat3 import parse_matrix, parse_vector
from .strata import Stratum, c_invariants, classify_flag, classify_line
from .witness import WITNESSES, NotOnSphere, WrongStratum, sphere_section, witness

DOMAIN_ERRORS = (FieldError, FlagError, CapExceeded, WrongStratum, NotOnSphere, ZeroDivisionError, ValueError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flagstrata", description="SO(3)-strata of full flags over exact fields.")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap on q (default 49 or $FLAGSTRATA_CAP)")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def field_cmd(name, help):
        c = sub.add_parser(name, help=help)
        c.add_argument("--field", required=True, help="Q, Qi, Fp:<p>, Fq:<p>^<e> or a tower such as Q|2|-1")
        src = c.add_mutually_exclusive_group(required=True)
        src.add_argument("--matrix", help='det-1 representative, rows split by ";", e.g. "1,0,0;0,1,0;0,0,1"')
        src.add_argument("--point", help='vector literal "x,y,z"')
        return c

    field_cmd("classify", "stratum of a flag, or O'/C' of a line")
    w = field_cmd("witness", "explicit SO(3) witness for a flag, or a sphere section for a point")
    w.add_argument("--stratum", choices=[s.value for s in Stratum], help="insist on this stratum's construction")
    w.add_argument("--chart", choices=["xy", "yz", "zx"], help="sphere chart (with --point)")

    for name, help in (("census", "stratum sizes"), ("orbits", "stratum sizes and SO(3)-orbits"), ("p2-census", "O'/C' split of P^2")):
        c = sub.add_parser(name, help=help)
        c.add_argument("--q", type=int, nargs="+", required=True)
        c.add_argument("--tsv", action="store_true")

    v = sub.add_parser("verify", help="partition, base change and random k g b invariance")
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    return p


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _classify(args) -> tuple[dict, int]:
    ctx = make_field(args.field)
    if args.point is not None:
        return {"line_stratum": str(classify_line(ProjPoint(parse_vector(ctx, args.point))))}, 0
    f = flag_from_matrix(parse_matrix(ctx, args.matrix))
    return {"stratum": str(classify_flag(f)), "c": c_invariants(f).as_strings()}, 0


def _witness(args) -> tuple[dict, int]:
    ctx = make_field(args.field)
    if args.point is not None:
        k = sphere_section(parse_vector(ctx, args.point), args.chart)
        return {"k": k.to_lists(), "field": k.ctx.descriptor}, 0
    f = flag_from_matrix(parse_matrix(ctx, args.matrix))
    res = WITNESSES[Stratum(args.stratum)](f) if args.stratum else witness(f)
    return res.to_json(), 0


def _tables(args, make):
    reports = [make(q, args.cap) for q in args.q]
    code = 0 if all(r.ok for r in reports) else 1
    if args.tsv:
        return format_report(reports, "tsv"), code
    return _dump(reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]), code


def _p2(args):
    rows = [(q, *p2_census(q, args.cap)) for q in args.q]
    if args.tsv:
        return "q\tp2_O'\tp2_C'\n" + "".join(f"{q}\t{o}\t{c}\n" for q, o, c in rows), 0
    docs = [{"q": q, "O'": o, "C'": c} for q, o, c in rows]
    return _dump(docs[0] if len(docs) == 1 else docs), 0


def _verify(args) -> tuple[dict, int]:
    part = verify_partition(args.q, args.cap)
    inv = kgb_invariance(args.q, args.samples, args.seed, args.cap)
    doc = part.to_json()
    doc["kgb"] = {"samples": inv.samples, "failures": inv.failures}
    doc["seed"] = args.seed
    return doc, 0 if part.ok and inv.ok else 1


def run(argv: Sequence[str], out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as e:
        out.write(_dump({"error": "usage", "message": str(e)}) + "\n")
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        if args.verb == "classify":
            doc, code = _classify(args)
        elif args.verb == "witness":
            doc, code = _witness(args)
        elif args.verb == "census":
            doc, code = _tables(args, stratum_census)
        elif args.verb == "orbits":
            doc, code = _tables(args, lambda q, cap: orbit_census(q, cap))
        elif args.verb == "p2-census":
            doc, code = _p2(args)
        else:
            doc, code = _verify(args)
    except DOMAIN_ERRORS as e:
        out.write(_dump({"error": type(e).__name__, "message": str(e)}) + "\n")
        return 1
    text = doc if isinstance(doc, str) else _dump(doc)
    out.write(text if text.endswith("\n") else text + "\n")
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
