"""Command line front end.

Exit codes: 0 success, 1 invalid input, 2 search budget exhausted under
``--strict``, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .constructions import (
    BraidWord, connected_sum, figure_constraints_check, plat, stabilize,
    troublesome_unknot_candidate,
)
from .errors import KnotWidthError
from .explorer import DEFAULT_NODES, Budgets, descend, explore, is_local_min
from .morse import (
    Presentation, parse, render, report, slab_arcs, thick_thin, width,
)
from .moves import (
    DEFAULT_BUDGET, TIER_TABLE, Tier, classify_thick_level, enumerate_inverse,
    enumerate_preserving, enumerate_reducing,
)

EXIT_INVALID = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _version_text():
    lines = [f"knotwidth {__version__}", "move tiers:"]
    lines += [f"  {t.name.lower()}: {TIER_TABLE[t]}" for t in Tier]
    return "\n".join(lines)


class _VersionAction(argparse.Action):
    def __init__(self, option_strings, dest, **kw):
        super().__init__(option_strings, dest, nargs=0, help="print version and move tiers")

    def __call__(self, parser, namespace, values, option_string=None):
        print(_version_text())
        parser.exit(0)


def read_word(arg: str) -> Presentation:
    """An inline word, or the first non-comment line of a file."""
    if os.path.isfile(arg):
        with open(arg) as fh:
            for line in fh:
                if line.split("#", 1)[0].strip():
                    return parse(line)
        return parse("")
    return parse(arg)


def _tier(text):
    try:
        return Tier.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _search_flags(p, graph=False):
    p.add_argument("--tier", type=_tier, default=Tier.T1, help="t0, t1 or t2 (default t1)")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                   help="closure budget in distinct words (default 10000)")
    if graph:
        p.add_argument("--nodes", type=_positive, default=DEFAULT_NODES,
                       help="node cap (default 100000)")
        p.add_argument("--width-cap", type=_positive, default=None,
                       help="largest width reached by inverse moves (needs --undirected)")
        p.add_argument("--undirected", action="store_true",
                       help="also follow inverse Type I/II moves")


def build_parser():
    ap = _Parser(prog="knotwidth", description="Width calculus for knots given as Morse words.")
    ap.add_argument("--version", action=_VersionAction)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, word=True):
        p = sub.add_parser(name, help=help)
        if word:
            p.add_argument("word", help="inline word such as 'u1 u3 x2 d1 d1', or a file")
        p.add_argument("--json", metavar="FILE", help="write JSON to FILE ('-' for stdout)")
        p.add_argument("--strict", action="store_true",
                       help="exit 2 when a search budget was exhausted")
        return p

    add("parse", "validate a word and print its report")
    add("width", "print the width")
    add("decompose", "strand profile, thick/thin levels and slab arcs")
    p = add("moves", "list preserving and reducing moves")
    p.add_argument("--tier", type=_tier, default=Tier.T1)
    p.add_argument("--inverse", action="store_true", help="also list inverse moves")
    p = add("classify", "classify one thick level")
    p.add_argument("--thick", type=int, required=True, help="thick level index (0-based)")
    _search_flags(p)
    p = add("explore", "bounded neighbourhood of the width complex")
    _search_flags(p, graph=True)
    p.add_argument("--dot", metavar="FILE", help="write Graphviz DOT to FILE ('-' for stdout)")
    p = add("descend", "greedy monotone descent")
    _search_flags(p)
    p = add("islocalmin", "conservative local-minimum test")
    _search_flags(p)
    p = add("plat", "plat closure of a braid", word=False)
    p.add_argument("--n", type=_positive, required=True, help="strand count (even)")
    p.add_argument("--braid", default="", help="signed generators, e.g. '2 2 -1'")
    p = add("sum", "connected sum of two knots", word=False)
    p.add_argument("first")
    p.add_argument("second")
    p = add("stabilize", "insert a zig-zag", word=True)
    p.add_argument("--at", type=int, required=True, help="insert above this event (1-based)")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--turn", type=int, choices=(1, -1), default=1,
                   help="cap at index+1 (1) or index-1 (-1)")
    add("candidate", "print the troublesome-unknot stand-in", word=False)
    add("check-figure", "check the troublesome-unknot shape constraints")
    return ap


def _check_conflicts(args):
    if getattr(args, "width_cap", None) is not None and not args.undirected:
        raise UsageError("--width-cap only applies with --undirected")
    if args.json and args.json == getattr(args, "dot", None) and args.json != "-":
        raise UsageError("--json and --dot name the same file")
    if args.json == "-" and getattr(args, "dot", None) == "-":
        raise UsageError("--json - and --dot - both target standard output")


def _emit(args, data, human, out):
    if args.json == "-":
        out.write(json.dumps(data, indent=2, sort_keys=False) + "\n")
        return
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(json.dumps(data, indent=2) + "\n")
    out.write(human if human.endswith("\n") else human + "\n")


def _budgets(args):
    return Budgets(args.tier, args.budget, getattr(args, "nodes", DEFAULT_NODES),
                   getattr(args, "width_cap", None), getattr(args, "undirected", False))


def _run(args, out):
    """Returns (json data, human text, budget exhausted)."""
    cmd = args.command
    if cmd == "parse":
        k = read_word(args.word)
        data = report(k)
        return data, "\n".join(f"{key}: {val}" for key, val in data.items() if key != "events"), False
    if cmd == "width":
        k = read_word(args.word)
        return {"word": render(k), "width": width(k)}, str(width(k)), False
    if cmd == "decompose":
        k = read_word(args.word)
        data = report(k)
        slabs = []
        for j in range(len(thick_thin(k).thick)):
            below, above = slab_arcs(k, j)
            slabs.append({
                "thick_index": j,
                "below": {"min_arcs": [[e, list(p)] for e, p in below.min_arcs],
                          "verticals": list(below.verticals)},
                "above": {"max_arcs": [[e, list(p)] for e, p in above.max_arcs],
                          "verticals": list(above.verticals)},
            })
        data["slabs"] = slabs
        lines = [f"profile: {data['profile']}", f"width: {data['width']}"]
        for level in thick_thin(k).levels():
            lines.append(f"  {level[0]} gap {level[1]} count {level[2]}")
        for s in slabs:
            lines.append(f"  A{s['thick_index']}: below {s['below']}  above {s['above']}")
        return data, "\n".join(lines), False
    if cmd == "moves":
        k = read_word(args.word)
        w = width(k)
        moves = enumerate_preserving(k, args.tier) + enumerate_reducing(k)
        if args.inverse:
            moves += enumerate_inverse(k)
        data = {"word": render(k), "width": w, "moves": [m.to_json(w) for m in moves]}
        human = "\n".join(f"{m.kind.value:10s} site {list(m.site)}  {m.to_json()['before']!r} -> "
                          f"{m.to_json()['after']!r}  width {w + m.delta}" for m in moves)
        return data, human or "no moves", False
    if cmd == "classify":
        k = read_word(args.word)
        c = classify_thick_level(k, args.thick, args.tier, args.budget)
        human = f"A{args.thick}: {c.classification.value}"
        if c.witness is not None:
            human += f" via {c.witness} in {render(c.witness_word)}"
        human += f" (closure {c.search_budget_used} words, {'truncated' if c.truncated else 'complete'})"
        return c.to_json(), human, c.truncated
    if cmd == "explore":
        k = read_word(args.word)
        g = explore(k, _budgets(args))
        if args.dot == "-":
            out.write(g.to_dot())
        elif args.dot:
            with open(args.dot, "w") as fh:
                fh.write(g.to_dot())
        sinks = g.sinks()
        human = (f"{len(g.nodes)} nodes, {len(g.edges)} edges, {len(sinks)} sinks"
                 f"{' (truncated)' if g.truncated or g.closure_truncated else ''}\n"
                 + "\n".join(f"  sink w={g.nodes[s].width}: {render(g.nodes[s].word)}" for s in sinks))
        if args.dot == "-" and not args.json:
            human = ""
        return g.to_json(), human, g.truncated or g.closure_truncated
    if cmd == "descend":
        k = read_word(args.word)
        path = descend(k, _budgets(args))
        lines = [f"w={path.widths[0]}  {render(path.start)}"]
        for s, w in zip(path.steps, path.widths[1:]):
            lines.append(f"  {s.move} -> w={w}  {render(s.result)}")
        lines.append(f"final width {path.final_width}"
                     + ("" if path.sink else " (not a sink)")
                     + (" (closure truncated)" if path.truncated else ""))
        return path.to_json(), "\n".join(lines), path.truncated
    if cmd == "islocalmin":
        k = read_word(args.word)
        r = is_local_min(k, args.tier, args.budget)
        human = r.label + (" (closure truncated)" if r.truncated else "")
        return r.to_json(), human, r.truncated
    if cmd == "plat":
        k = plat(BraidWord.from_text(args.n, args.braid))
        data = report(k)
        data["word"] = render(k)
        human = render(k) + ("" if k.is_knot else f"  # link with {k.component_count} components")
        return data, human, False
    if cmd == "sum":
        k = connected_sum(read_word(args.first), read_word(args.second))
        data = report(k)
        data["word"] = render(k)
        return data, render(k), False
    if cmd == "stabilize":
        k = stabilize(read_word(args.word), args.at, args.index, args.turn)
        data = report(k)
        data["word"] = render(k)
        return data, render(k), False
    if cmd == "candidate":
        k = troublesome_unknot_candidate()
        data = report(k)
        data["word"] = render(k)
        data["status"] = "experimental stand-in: matches the shape constraints only"
        return data, render(k), False
    if cmd == "check-figure":
        r = figure_constraints_check(read_word(args.word))
        human = "\n".join(f"({i.name}) {'pass' if i.passed else 'FAIL'}: {i.detail}" for i in r.items)
        return r.to_json(), human, False
    raise UsageError(f"unknown command {cmd}")


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    try:
        _check_conflicts(args)
        data, human, exhausted = _run(args, out)
    except UsageError as e:
        err.write(f"knotwidth: usage error: {e}\n")
        return EXIT_USAGE
    except KnotWidthError as e:
        err.write(f"knotwidth: {type(e).__name__}: {e}\n")
        return EXIT_INVALID
    except (IndexError, ValueError) as e:
        err.write(f"knotwidth: {e}\n")
        return EXIT_INVALID
    if human or args.json:
        _emit(args, data, human, out)
    if exhausted and args.strict:
        err.write("knotwidth: search budget exhausted\n")
        return EXIT_BUDGET
    return 0


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
