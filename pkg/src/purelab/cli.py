"""Command-line front end.

Exit codes: 0 success, 1 negative answer (impure, no decomposition, not
invertible, ...), 2 usage or input error, 3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import families
from .canon import key_hex
from .complement import complementation_diameter, enumerate_complementation_class
from .errors import BudgetExceeded, LoopObstruction, NotInvertible, PurelabError
from .graph import Graph, bits, format_graph, parse_graph, to_dot
from .parity import enumerate_parity_class, find_black_anticlique, invert, natural_colouring, purity
from .search import DEFAULT_BUDGET

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _generated(args):
    kind, *params = args.gen
    try:
        return families.gen(kind, params)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"--gen {' '.join(args.gen)}: {exc}") from None


def _load_graph(args, colour: bool = True) -> Graph:
    if args.gen:
        g = _generated(args)
        if not isinstance(g, Graph):
            raise UsageError(f"family {args.gen[0]} does not produce a simple graph")
    else:
        g = parse_graph(_read(args.input))
    if colour and g.black is None:
        g = natural_colouring(g)
    return g


def _load_system(args):
    from .euler.multigraph import parse_mgraph

    if args.gen:
        out = _generated(args)
        if isinstance(out, Graph):
            raise UsageError(f"family {args.gen[0]} does not produce a transition system")
        return out
    m, ts = parse_mgraph(_read(args.input))
    if ts is None:
        raise UsageError("the input has no transition lines")
    return m, ts


def _emit_graph(g: Graph, args) -> str:
    return to_dot(g) if args.format == "dot" else format_graph(g)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


# verbs ------------------------------------------------------------------

def cmd_class(args, out) -> int:
    g = _load_graph(args)
    orb = enumerate_parity_class(g, args.budget, strong=args.strong, jobs=args.jobs)
    reps = orb.sorted_reps()
    pure = all(find_black_anticlique(h) is None for _, h in reps)
    out.write(f"count={len(reps)} pure={_yn(pure)}\n")
    if args.reps:
        for key, h in reps:
            out.write(f"# {key_hex(key)}\n")
            out.write(_emit_graph(h, args))
    return EXIT_OK


def cmd_orbit(args, out) -> int:
    g = _load_graph(args, colour=False)
    orb = enumerate_complementation_class(g, labeled=args.labeled, budget=args.budget, jobs=args.jobs)
    line = f"count={orb.count_iso}"
    if orb.count_labeled is not None:
        line += f" labeled={orb.count_labeled}"
    if args.diameter:
        line += f" diameter={complementation_diameter(g, args.budget)}"
    out.write(line + "\n")
    if args.reps:
        for key, h in orb.reps.items():
            out.write(f"# {key_hex(key)}\n")
            out.write(_emit_graph(h, args))
    return EXIT_OK


def cmd_pure(args, out) -> int:
    g = _load_graph(args)
    if args.by_split:
        from .split import purity_by_decomposition

        cert = purity_by_decomposition(g, args.budget)
        out.write((cert or "none") + "\n")
        return EXIT_OK if cert else EXIT_NO
    rep = purity(g, args.budget, strong=args.strong, full=args.full, jobs=args.jobs)
    if rep.pure:
        if not rep.orbit.complete:
            raise BudgetExceeded(args.budget)
        out.write(f"pure=yes count={rep.count}\n")
        return EXIT_OK
    word = " ".join(str(mv) if not isinstance(mv, tuple) else f"b{mv[1]}" for mv in rep.witness_word)
    out.write("pure=no\n")
    out.write(f"word {word}\n".rstrip() + "\n")
    h = rep.witness_graph
    out.write(f"anticlique {' '.join(map(str, bits(find_black_anticlique(h))))}\n")
    out.write(_emit_graph(h, args))
    return EXIT_NO


def cmd_invert(args, out) -> int:
    g = _load_graph(args)
    try:
        h = invert(g)
    except NotInvertible:
        out.write("not-invertible\n")
        return EXIT_NO
    out.write(_emit_graph(h, args))
    return EXIT_OK


def cmd_gen(args, out) -> int:
    from .euler.multigraph import format_mgraph

    res = families.gen(args.kind, args.params) if args.kind else None
    if isinstance(res, Graph):
        if args.natural:
            res = natural_colouring(res)
        out.write(_emit_graph(res, args))
    else:
        out.write(format_mgraph(*res))
    return EXIT_OK


def cmd_ts(args, out) -> int:
    from .euler.correspondence import correspondence
    from .euler.ocd import cdc_search, orthogonal_cycle_decomposition

    if args.action == "cdc":
        g = _load_graph(args, colour=False)
        res = cdc_search(g, route=args.route, method=args.method, budget=args.budget)
        if res.cycles is None:
            out.write(f"none route={res.route} obstruction={res.obstruction} matchings={res.tried}\n")
            return EXIT_NO
        out.write(f"# route={res.route} cycles={len(res.cycles)}\n")
        for c in res.cycles:
            out.write(" ".join(map(str, c)) + "\n")
        return EXIT_OK
    m, ts = _load_system(args)
    if args.action == "tour-orth":
        from .euler.multigraph import orthogonal_euler_tour

        history: list = []
        try:
            tour = orthogonal_euler_tour(m, ts, history=history)
        except LoopObstruction as exc:
            out.write(f"none ({exc})\n")
            return EXIT_NO
        out.write(" ".join(f"{e}.{side}" for e, side in tour) + "\n")
        out.write("# faulty " + " ".join(map(str, history)) + "\n")
        return EXIT_OK
    if args.action == "ocd":
        cycles = orthogonal_cycle_decomposition(m, ts, method=args.method, budget=args.budget)
        if cycles is None:
            out.write("none\n")
            return EXIT_NO
        for c in cycles:
            out.write(" ".join(map(str, c)) + "\n")
        return EXIT_OK
    if args.action == "to-parity":
        c = correspondence(m, ts)
        out.write(f"# word {c.word}\n")
        out.write(_emit_graph(c.graph, args))
        return EXIT_OK
    raise UsageError(f"unknown ts action {args.action}")


def cmd_dow(args, out) -> int:
    from .euler.dow import alternance_graph, format_dow, parse_dow, realize, switch, twist

    if args.action == "realize":
        g = _load_graph(args, colour=False)
        w = realize(g)
        if w is None:
            out.write("none\n")
            return EXIT_NO
        out.write(format_dow(w))
        return EXIT_OK
    if not args.word:
        raise UsageError("--word is required")
    w = parse_dow(args.word)
    if args.action == "alternance":
        out.write(_emit_graph(alternance_graph(w), args))
        return EXIT_OK
    letters = [int(x) if x.lstrip("-").isdigit() else x for x in args.letters]
    if len(letters) == 1:
        out.write(format_dow(twist(w, letters[0])))
    elif len(letters) == 2:
        out.write(format_dow(switch(w, *letters)))
    else:
        raise UsageError("twist takes one letter, or two for a switch")
    return EXIT_OK


# parser -----------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="input file ('-' or omitted: stdin)")
    p.add_argument("--gen", nargs="+", metavar="KIND", help="use a generated family member instead of input")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="state budget for searches")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for class enumeration")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="purelab", description="Local complementation, parity classes and transition systems.")
    sub = p.add_subparsers(dest="verb", required=True)

    q = sub.add_parser("class", help="enumerate the parity class")
    _common(q)
    q.add_argument("--reps", action="store_true", help="print one representative per isomorphism class")
    q.add_argument("--strong", action="store_true", help="also allow complementation at black vertices")
    q.set_defaults(func=cmd_class)

    q = sub.add_parser("orbit", help="complementation class (uncoloured)")
    _common(q)
    q.add_argument("--labeled", action="store_true", help="also count labeled members")
    q.add_argument("--diameter", action="store_true", help="diameter of the complementation graph")
    q.add_argument("--reps", action="store_true")
    q.set_defaults(func=cmd_orbit)

    q = sub.add_parser("pure", help="decide purity, with a witness when impure")
    _common(q)
    q.add_argument("--by-split", action="store_true", help="certificate from essential decompositions")
    q.add_argument("--full", action="store_true", help="enumerate the whole class first")
    q.add_argument("--strong", action="store_true")
    q.set_defaults(func=cmd_pure)

    q = sub.add_parser("invert", help="complement with respect to the whole vertex set")
    _common(q)
    q.set_defaults(func=cmd_invert)

    q = sub.add_parser("gen", help="print a family member")
    q.add_argument("kind", choices=families.KINDS)
    q.add_argument("params", nargs="*")
    q.add_argument("--format", choices=("text", "dot"), default="text")
    q.add_argument("--natural", action="store_true", help="attach the natural colouring")
    q.set_defaults(func=cmd_gen)

    q = sub.add_parser("ts", help="transition system pipelines")
    q.add_argument("action", choices=("tour-orth", "ocd", "to-parity", "cdc"))
    _common(q)
    q.add_argument("--method", choices=("auto", "parity", "search"), default="auto")
    q.add_argument("--route", choices=("both", "line", "factor"), default="both")
    q.set_defaults(func=cmd_ts)

    q = sub.add_parser("dow", help="double occurrence words")
    q.add_argument("action", choices=("alternance", "twist", "realize"))
    q.add_argument("letters", nargs="*", help="letter to twist at (two letters: switch)")
    q.add_argument("--word", help="the word, letters separated by spaces")
    q.add_argument("--input", dest="input", default=None, help="graph file for realize")
    q.add_argument("--gen", nargs="+", metavar="KIND")
    q.add_argument("--format", choices=("text", "dot"), default="text")
    q.set_defaults(func=cmd_dow)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        sys.stderr.write(f"purelab: {exc}\n")
        return EXIT_BUDGET
    except (UsageError, PurelabError, ValueError, OSError) as exc:
        sys.stderr.write(f"purelab: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
