"""Command-line front end: ``d4kit verify|extend|recur|lemmas|search|lift``.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 audit violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from typing import Optional, Sequence

from .dtuple import (
    DTupleError,
    extend_pair_regular,
    extend_triple_regular,
    lift_dminus4,
    verify_dtuple,
)
from .gint import format_gint, parse_gint
from .gpoly import GPoly, poly_print
from .pell import (
    PellError,
    analyze,
    build_system,
    fundamental_solutions,
    run_checkers,
    run_sequence,
)
from .polytext import ParseError, poly_parse
from .search import SearchBounds, audit_lemmas, audit_theorem, write_corpus

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_AUDIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _poly_arg(text: str) -> GPoly:
    try:
        return poly_parse(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(f"bad polynomial {text!r}: {exc}") from exc


def _gint_arg(text: str):
    try:
        return parse_gint(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _bounds_arg(text: str) -> tuple[int, int]:
    try:
        d, b = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected d,B got {text!r}") from exc
    return d, b


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="d4kit", description="Exact toolkit for D(4)-tuples of polynomials over Z[i][X].")
    p.add_argument("--json", action="store_true", help="emit JSON on standard output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check a D(n)-tuple and print its witnesses")
    v.add_argument("--n", type=_gint_arg, default=parse_gint("4"))
    v.add_argument("elements", nargs="+", type=_poly_arg)

    e = sub.add_parser("extend", help="regular extensions of a pair or triple")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--pair", nargs=2, type=_poly_arg, metavar="P")
    g.add_argument("--triple", nargs=3, type=_poly_arg, metavar="P")

    r = sub.add_parser("recur", help="fundamental solutions and recurrence terms")
    r.add_argument("--triple", nargs=3, type=_poly_arg, metavar="P", required=True)
    r.add_argument("--depth", type=_positive, default=6)
    r.add_argument("--branch", type=int, choices=(1, 2))

    lm = sub.add_parser("lemmas", help="lemma audit for one triple or a search box")
    g = lm.add_mutually_exclusive_group(required=True)
    g.add_argument("--triple", nargs=3, type=_poly_arg, metavar="P")
    g.add_argument("--bounds", type=_bounds_arg, metavar="d,B")
    lm.add_argument("--depth", type=_positive, default=6)

    s = sub.add_parser("search", help="bounded regularity audit")
    s.add_argument("--max-deg", type=int, default=2)
    s.add_argument("--coeff-bound", type=_positive, default=4)
    s.add_argument("--depth", type=_positive, default=6)
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--out", help="output directory (default: $D4KIT_OUT_DIR or ./d4kit_out)")

    lf = sub.add_parser("lift", help="lift a D(-4)-triple over Z[X] and evaluate its extensions")
    lf.add_argument("--dminus4", nargs=3, type=_poly_arg, metavar="P", required=True)
    return p


# -- commands ---------------------------------------------------------------


def _emit(args, doc: dict, text: str) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True) if args.json else text)


def cmd_verify(args) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        t = verify_dtuple(args.elements, args.n)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    doc = t.to_json()
    doc["printed"] = {
        "elements": [poly_print(p) for p in t.elements],
        "witnesses": {f"{i},{j}": poly_print(w) for (i, j), w in sorted(t.witnesses.items())},
    }
    _emit(args, doc, t.describe())
    return EXIT_OK


def cmd_extend(args) -> int:
    if args.pair:
        cp, cm, r = extend_pair_regular(*args.pair)
        doc = {"c_plus": poly_print(cp), "c_minus": poly_print(cm), "r": poly_print(r)}
        text = f"c_plus = {cp}\nc_minus = {cm}\nr = {r}"
    else:
        ext = extend_triple_regular(*args.triple)
        doc = {"d_plus": poly_print(ext.d_plus), "d_minus": poly_print(ext.d_minus),
               "r": poly_print(ext.witnesses.r), "s": poly_print(ext.witnesses.s),
               "t": poly_print(ext.witnesses.t)}
        text = "\n".join(f"{k} = {v}" for k, v in doc.items())
    _emit(args, doc, text)
    return EXIT_OK


def cmd_recur(args) -> int:
    system = build_system(args.triple)
    doc = {"triple": [poly_print(p) for p in (system.a, system.b, system.c)], "branches": []}
    lines = [f"triple {system.instance_id()}"]
    for br in (args.branch,) if args.branch else (1, 2):
        for f in fundamental_solutions(system, br):
            run = run_sequence(system, br, f, args.depth + 1)
            doc["branches"].append({
                "branch": br, "z0": poly_print(f.z), "xy0": poly_print(f.xy),
                "d_seed": poly_print(f.d_seed), "terms": [poly_print(v) for v in run.terms],
            })
            name = "v" if br == 1 else "w"
            lines.append(f"branch {br}: seed z = {f.z}, partner = {f.xy}, d = {f.d_seed}")
            lines.extend(f"  {name}_{k} = {v}" for k, v in enumerate(run.terms))
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def _report(args, results) -> int:
    docs = [r.to_json() for r in results]
    fails = [r for r in results if r.status == "fail"]
    if args.json:
        print(json.dumps(docs, indent=2))
    else:
        for r in results:
            print(f"{r.lemma_id:9s} {r.status:15s} {r.instance_id}  {r.detail}")
        print(f"{len(results)} checks, {len(fails)} failures")
    return EXIT_AUDIT if fails else EXIT_OK


def cmd_lemmas(args) -> int:
    if args.triple:
        results = run_checkers(analyze(args.triple, args.depth))
    else:
        d, b = args.bounds
        results = audit_lemmas(SearchBounds(d, b, args.depth))
    return _report(args, results)


def cmd_search(args) -> int:
    bounds = SearchBounds(args.max_deg, args.coeff_bound, args.depth)
    res = audit_theorem(bounds, jobs=args.jobs, progress=lambda m: print(m, file=sys.stderr))
    out_dir = args.out or os.environ.get("D4KIT_OUT_DIR", "d4kit_out")
    corpus, manifest = write_corpus(res, out_dir)
    doc = res.manifest()
    doc["files"] = {"corpus": str(corpus), "manifest": str(manifest)}
    c = res.counts
    text = (f"bounds deg <= {bounds.max_deg}, |coeff| <= {bounds.coeff_bound}\n"
            f"pairs {c['pairs']}, triples {c['triples']}, quadruples {c['quadruples']}\n"
            f"violations {len(res.violations)}\ndigest {res.digest}\n"
            f"corpus {corpus}\nmanifest {manifest}")
    _emit(args, doc, text)
    return EXIT_OK if res.ok else EXIT_AUDIT


def cmd_lift(args) -> int:
    res = lift_dminus4(*args.dminus4)
    exts = [{"sign": e.sign, "d": poly_print(e.d), "status": e.status,
             "witnesses": [poly_print(w) for w in e.witnesses] if e.witnesses else None}
            for e in res.extensions]
    doc = {"lifted": res.lifted.to_json(),
           "lifted_printed": [poly_print(p) for p in res.lifted.elements],
           "witnesses": [poly_print(w) for w in res.witnesses], "extensions": exts}
    lines = ["lifted D(4)-triple: {" + ", ".join(doc["lifted_printed"]) + "}",
             "r', s', t' = " + ", ".join(doc["witnesses"])]
    for e in exts:
        lines.append(f"d{'+' if e['sign'] > 0 else '-'} = {e['d']}  [{e['status']}]")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "extend": cmd_extend, "recur": cmd_recur,
            "lemmas": cmd_lemmas, "search": cmd_search, "lift": cmd_lift}


def _protect_negatives(argv: Sequence[str]) -> list[str]:
    # polynomials such as "-2iX^2-4iX" would otherwise look like short options;
    # every real option is long-form except -h
    return [f" {tok}" if tok.startswith("-") and not tok.startswith("--") and tok != "-h" else tok
            for tok in argv]


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _protect_negatives(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "search" and args.max_deg < 0:
            raise UsageError("--max-deg must be >= 0")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DTupleError, PellError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
