"""Command-line entry point: ``embedlab <command> ...``.

Commands
  list                              show suites grouped by module
  verify SUITE... | --all           run suites; exit status 1 if any check fails
  witness sym|endo|path             build and print one witness
  rel check --suite NAME            shorthand for ``verify rel.NAME``
  lattice NAME                      shorthand for ``verify lattice.NAME``
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .suites import MODULES, SUITES, RunReport, run_suite


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="ground-set or family size")
    p.add_argument("--depth", type=int, help="closure depth")
    p.add_argument("--bound", type=int, help="word length or size bound")
    p.add_argument("--seed", type=int, help="random seed")
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")


def _params(args) -> dict:
    return {k: getattr(args, k) for k in ("n", "depth", "bound", "seed")}


def _emit_json(path: str | None, payload) -> None:
    if not path:
        return
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _print_report(rep: RunReport, out) -> None:
    print(f"== {rep.suite}  ({rep.wall_time:.2f}s)", file=out)
    for c in rep.checks:
        detail = ", ".join(f"{k}={v}" for k, v in c.detail.items())
        print(f"  {'PASS' if c.passed else 'FAIL'}  {c.name}  {detail}", file=out)
        if c.counterexample is not None:
            print(f"        counterexample: {json.dumps(c.counterexample)}", file=out)


def _run_many(names: Sequence[str], args) -> int:
    reports = []
    out = sys.stderr if args.json == "-" else sys.stdout
    for name in names:
        rep = run_suite(name, _params(args))
        _print_report(rep, out)
        reports.append(rep)
    payload = [r.to_json() for r in reports]
    _emit_json(args.json, payload[0] if len(payload) == 1 else payload)
    ok = all(r.passed for r in reports)
    print(f"{'all passed' if ok else 'FAILURES'}: {sum(r.passed for r in reports)}/{len(reports)} suites", file=out)
    return 0 if ok else 1


def _check_name(parser, name: str) -> str:
    if name not in SUITES:
        parser.error(f"unknown suite {name!r}; try 'embedlab list'")
    return name


def cmd_list(args) -> int:
    for mod in MODULES:
        print(mod)
        for s in SUITES.values():
            if s.module == mod:
                print(f"  {s.name:26s} {s.summary}")
    return 0


def cmd_verify(args, parser) -> int:
    if args.all:
        names = list(SUITES)
    elif args.suites:
        names = [_check_name(parser, n) for n in args.suites]
    else:
        parser.error("name at least one suite or pass --all")
    return _run_many(names, args)


def cmd_witness_sym(args) -> int:
    from .sym_witness import distinguish
    from .words import endo_monoid, parse_word

    fac = {"A": endo_monoid((), "A"), "B": endo_monoid((), "B")}
    g, h = parse_word(args.g, fac), parse_word(args.h, fac)
    w = distinguish(g, h)
    print("t pairs: " + " ".join(f"{a}<->{b}" for a, b in w.t.pairs))
    print(f"start:   {w.start}   swapped: {w.swapped}")
    print("trace g: " + " ".join(map(str, w.trace_g)))
    print("trace h: " + " ".join(map(str, w.trace_h)))
    _emit_json(args.json, w.to_json())
    return 0


def cmd_witness_endo(args) -> int:
    from .endo_witness import endo_witness
    from .tensor import format_word, parse_tensor

    w = endo_witness(parse_tensor(args.x))
    print(f"sigma:  {sorted(w.sigma)}")
    print(f"word:   {format_word(w.word) or '1'}  (n={w.n})")
    for a, b in w.pairs:
        print(f"t:      {a} <-> {b}")
    print(f"h(x) at top level: {w.top}")
    _emit_json(args.json, w.to_json())
    return 0


def cmd_witness_path(args) -> int:
    from .path_product import PathFactors, faithful_witness, natural_mset
    from .words import parse_word, symmetric_group

    n = args.n or 3
    fac = {"A": symmetric_group(n), "B": symmetric_group(n)}
    pf = PathFactors(fac, {"A": natural_mset(n), "B": natural_mset(n)}, args.depth if args.depth is not None else 2)
    w = faithful_witness(parse_word(args.g, fac), parse_word(args.h, fac), pf)
    print(f"x:   {w.x}")
    print(f"g x: {w.gx}")
    print(f"h x: {w.hx}")
    _emit_json(args.json, w.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="embedlab", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list suites")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suites", nargs="*")
    v.add_argument("--all", action="store_true", help="run every suite")
    _add_params(v)

    w = sub.add_parser("witness", help="build a single witness")
    wsub = w.add_subparsers(dest="kind", required=True)
    ws = wsub.add_parser("sym", help="two words over two copies of the finitely supported maps")
    ws.add_argument("--g", required=True, help="word like 'A:(0 1)|B:[1,1]'")
    ws.add_argument("--h", required=True)
    ws.add_argument("--json", metavar="PATH")
    we = wsub.add_parser("endo", help="nonzero element of the coproduct of two End(V)")
    we.add_argument("--x", required=True, help="element like '2*A:E(1,0)*B:E(0,1) - A:D'")
    we.add_argument("--json", metavar="PATH")
    wp = wsub.add_parser("path", help="two words over S_n * S_n")
    wp.add_argument("--g", required=True)
    wp.add_argument("--h", required=True)
    wp.add_argument("--n", type=int)
    wp.add_argument("--depth", type=int)
    wp.add_argument("--json", metavar="PATH")

    r = sub.add_parser("rel", help="relation suites")
    rsub = r.add_subparsers(dest="action", required=True)
    rc = rsub.add_parser("check")
    rc.add_argument("--suite", required=True, help="e.g. two-class, theta, double")
    _add_params(rc)

    lt = sub.add_parser("lattice", help="lattice suites")
    lt.add_argument("suite", help="e.g. eq-size, chains, embeddings")
    _add_params(lt)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            return cmd_list(args)
        if args.command == "verify":
            return cmd_verify(args, parser)
        if args.command == "rel":
            return _run_many([_check_name(parser, f"rel.{args.suite}")], args)
        if args.command == "lattice":
            return _run_many([_check_name(parser, f"lattice.{args.suite}")], args)
        handler = {"sym": cmd_witness_sym, "endo": cmd_witness_endo, "path": cmd_witness_path}[args.kind]
        return handler(args)
    except (ValueError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
