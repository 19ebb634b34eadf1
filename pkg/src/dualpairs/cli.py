"""Command-line entry point.

Symbols are written in the ``TOP;BOT`` grammar (``-`` for an empty row),
e.g. ``8,5,1;6,3``.  Reports go to stdout; verification suites emit one
JSON line per suite and exit nonzero on any failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import branching, cells, derivative, relations, suites, tables
from .symbols import SpecialSymbol, enumerate_special, parse, render, special_closure

RANK_CAP = 24  # family sizes grow like 4^degree; refuse big sweeps without --force


def _special(text: str) -> SpecialSymbol:
    return SpecialSymbol(parse(text))


def _eps(text: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError("epsilon must be + or -")


def cmd_symbol(args) -> int:
    sym = parse(args.Z)
    info = {
        "symbol": render(sym),
        "rank": sym.rank,
        "defect": sym.defect,
        "transpose": render(sym.t),
        "bipartition": {
            "star": list(sym.bipartition().star),
            "sub": list(sym.bipartition().sub),
        },
    }
    try:
        sp = SpecialSymbol(sym)
        info["special"] = {
            "degree": sp.degree,
            "regular": sp.is_regular,
            "degenerate": sp.is_degenerate,
            "doubles": list(sp.doubles),
            "singles": [[v, "top" if r == 0 else "bot"] for (v, r) in sp.singles],
        }
    except ValueError:
        info["special"] = None
        info["special_closure"] = render(special_closure(sym).symbol)
    print(json.dumps(info, indent=2))
    return 0


def cmd_enumerate_specials(args) -> int:
    for z in enumerate_special(args.rank, args.defect):
        print(render(z.symbol))
    return 0


def cmd_relation(args) -> int:
    rel = relations.relation_set(_special(args.Z), _special(args.Zp), args.kind)
    sys.stdout.write(tables.render_table(rel, args.format))
    return 0


def cmd_derive(args) -> int:
    chain = derivative.derive_full(_special(args.Z), _special(args.Zp))
    print(json.dumps(chain.to_json()))
    return 0


def cmd_cells(args) -> int:
    Z = _special(args.Z)
    if args.phi is None:
        out = [str(phi) for phi in cells.arrangements(Z)]
        print(json.dumps(out))
        return 0
    phi = _parse_arrangement(args.phi)
    if args.psi is None:
        out = {}
        for psi in relations.subsets_of_pairs(phi.pair_set()):
            c = cells.cell(Z, phi, psi)
            key = ",".join("(%d;%d)" % p for p in sorted(psi)) or "{}"
            out[key] = sorted(render(s) for s in c.members)
        print(json.dumps(out, indent=2))
        return 0
    psi = frozenset(_parse_pairs(args.psi))
    c = cells.cell(Z, phi, psi)
    print(json.dumps(sorted(render(s) for s in c.members)))
    return 0


def _parse_pairs(text: str):
    # "(5;3),(2;0)" or "5:3,2:0"
    text = text.replace("(", "").replace(")", "").strip()
    if not text:
        return []
    pairs = []
    for tok in text.split(","):
        s, t = tok.split(";") if ";" in tok else tok.split(":")
        pairs.append((int(s), int(t)))
    return pairs


def _parse_arrangement(text: str) -> cells.Arrangement:
    pairs, isolated = [], None
    for (s, t) in _parse_pairs(text.replace(";-", ";-1")):
        if t == -1:
            isolated = s
        else:
            pairs.append((s, t))
    return cells.Arrangement(tuple(pairs), isolated)


def cmd_theta(args) -> int:
    tm = branching.theta_general(_special(args.Z), _special(args.Zp), args.epsilon)
    out = {
        "direction": tm.direction,
        "pairs": sorted(
            [render(a), render(b)] for (a, b) in branching.theta_graph(tm)
        ),
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_branch(args) -> int:
    sym = parse(args.symbol)
    grow = branching.omega_plus(sym) if args.direction == "+" else branching.omega_minus(sym)
    print(json.dumps([render(s) for s in grow]))
    return 0


def cmd_correspond(args) -> int:
    if args.n + args.np > RANK_CAP and not args.force:
        print(
            "rank sum %d exceeds the cap %d; pass --force to proceed"
            % (args.n + args.np, RANK_CAP),
            file=sys.stderr,
        )
        return 2
    table = tables.correspondence(args.n, args.np, args.epsilon)
    if args.format == "json":
        print(json.dumps(table.to_json(), indent=2))
    else:
        for b in table.blocks:
            print("# block Z=%s Zp=%s" % (b.Z, b.Zp))
            sys.stdout.write(tables.render_table(b, args.format))
    return 0


def cmd_verify(args) -> int:
    bounds = {"max_rank": args.max_rank, "eps": args.epsilon}
    names = sorted(suites.SUITES) if args.suite == "all" else [args.suite]
    bad = 0
    for name in names:
        report = suites.run_suite(name, **bounds)
        if not args.summary:
            for record in report.records:
                print(json.dumps(record, sort_keys=True))
        print(report.line())
        bad += not report.ok
    return 1 if bad else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dualpairs",
        description="Exact symbol combinatorics for symplectic/even-orthogonal dual pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("symbol", help="invariants of one symbol")
    psub = p.add_subparsers(dest="what", required=True)
    info = psub.add_parser("info")
    info.add_argument("--Z", required=True)
    info.set_defaults(func=cmd_symbol)

    p = sub.add_parser("enumerate-specials", help="reduced special symbols of a rank")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--defect", type=int, choices=(0, 1), required=True)
    p.set_defaults(func=cmd_enumerate_specials)

    p = sub.add_parser("relation", help="relation table of a special pair")
    p.add_argument("kind", choices=relations.KINDS)
    p.add_argument("--Z", required=True)
    p.add_argument("--Zp", required=True)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.set_defaults(func=cmd_relation)

    p = sub.add_parser("derive", help="derivative chain of a special pair")
    p.add_argument("--Z", required=True)
    p.add_argument("--Zp", required=True)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("cells", help="arrangements and cells of a special symbol")
    p.add_argument("--Z", required=True)
    p.add_argument("--phi", help='arrangement, e.g. "(4;-),(2;3),(0;1)"')
    p.add_argument("--psi", help='subset of pairs, e.g. "(2;3)"')
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("theta", help="correspondence map of a special pair")
    p.add_argument("--Z", required=True)
    p.add_argument("--Zp", required=True)
    p.add_argument("--epsilon", type=_eps, default=1)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("branch", help="rank-shift branching set of a symbol")
    p.add_argument("--symbol", required=True)
    p.add_argument("--direction", choices=("+", "-"), default="+")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("correspond", help="full correspondence at fixed ranks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--np", type=int, required=True)
    p.add_argument("--epsilon", type=_eps, default=1)
    p.add_argument("--format", choices=("md", "csv", "json"), default="json")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_correspond)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(suites.SUITES) + ["all"])
    p.add_argument("--max-rank", type=int, default=None)
    p.add_argument("--epsilon", type=_eps, default=1)
    p.add_argument(
        "--summary", action="store_true", help="suppress the per-pair JSON lines"
    )
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
