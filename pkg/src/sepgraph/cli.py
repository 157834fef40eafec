"""Command-line front end.

Exit codes: 0 success, 1 I/O or syntax error, 2 semantic or validation
error, 3 resource limit reached.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .errors import ParseError, ResourceLimit, SemanticError, SepGraphError
from .expectation import DEFAULT_EXPECTATION_LIMIT, phi_sep
from .expr import parse_element
from .graph import build_builtin, quotient
from .graphfile import parse_graph, serialize_graph
from .hereditary import closure, enumerate_lattice
from .ktheory import k_theory
from .leavitt import DEFAULT_STEP_LIMIT, LeavittAlgebra
from .monoid import (
    DEFAULT_MAX_STATES,
    equal_bounded,
    grothendieck_group,
    parse_monoid_element,
    relations,
)

SCHEMA_VERSION = 1


class UsageError(SepGraphError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_global_flags(p, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=default(False),
                   help="emit one JSON document instead of text")
    p.add_argument("--auto-trivial", action="store_true", default=default(False),
                   help="put edges missing from every block into a block T_<vertex>")
    p.add_argument("--threads", type=int, default=default(1), metavar="N",
                   help="worker threads for expectation evaluation")
    p.add_argument("--step-limit", type=int, default=default(None), metavar="K",
                   help="bound on rewriting / expectation steps")
    p.add_argument("--builtin", default=default(None), metavar="NAME:PARAMS",
                   help="use a builtin graph (emn:m,n  rose:n  hbk:k,l,m,n) instead of a file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sepgraph", description="Invariants of separated graphs and their algebras.")
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_, args_help):
        p = sub.add_parser(name, help=help_)
        _add_global_flags(p, suppress=True)
        p.add_argument("args", nargs="*", help=args_help)
        return p

    command("validate", "check a graph file", "FILE")
    command("ktheory", "K0 and K1 of the graph C*-algebra", "FILE")
    command("hsat", "hereditary C-saturated sets", "FILE (list | close V...)")
    q = command("quotient", "quotient graph by a hereditary C-saturated set", "FILE")
    q.add_argument("-H", nargs="*", default=[], metavar="V", help="vertices of H")
    command("nf", "normal form of an algebra expression", "FILE EXPR")
    command("expect", "conditional expectation of an algebra expression", "FILE EXPR")
    m = command("monoid", "graph monoid M(E,C)", "FILE (eq X Y | group | relations)")
    m.add_argument("--depth", type=int, default=10, help="maximum number of moves for eq")
    m.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    command("builtin", "print a builtin graph file", "NAME:PARAMS")
    return parser


# -- helpers ---------------------------------------------------------------------

def _load_graph(opts):
    """Return (graph, remaining positional args)."""
    args = list(opts.args)
    if opts.builtin:
        return build_builtin(opts.builtin), args
    if not args:
        raise UsageError("a graph FILE or --builtin NAME:PARAMS is required")
    path = args.pop(0)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_graph(text, auto_trivial=opts.auto_trivial), args


def _digest(g) -> str:
    return "sha256:" + hashlib.sha256(serialize_graph(g).encode()).hexdigest()


def _fmt_set(g, H) -> str:
    return "{" + ", ".join(v for v in g.vertices if v in H) + "}"


def _ordered(g, H) -> list:
    return [v for v in g.vertices if v in H]


def _need(args, count, usage):
    if len(args) != count:
        raise UsageError(f"usage: {usage}")


# -- commands ----------------------------------------------------------------------
# Each returns (result payload, text lines, metadata).

def cmd_validate(g, opts, args):
    _need(args, 0, "validate FILE")
    result = {
        "valid": True,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "blocks": [{"name": b.name, "vertex": b.vertex, "edges": list(b.edges)} for b in g.blocks],
    }
    lines = [f"valid: {len(g.vertices)} vertices, {len(g.edges)} edges, {len(g.blocks)} blocks"]
    lines += [f"  block {b['name']} at {b['vertex']}: {' '.join(b['edges'])}" for b in result["blocks"]]
    return result, lines, {"block_order": [b.name for b in g.blocks]}


def cmd_ktheory(g, opts, args):
    _need(args, 0, "ktheory FILE")
    kt = k_theory(g)
    result = kt.to_dict()
    lines = [kt.summary()]
    for v, coords in kt.k0.generator_images.items():
        lines.append(f"  [{v}] -> ({', '.join(map(str, coords))})")
    for vec in kt.k1_basis:
        lines.append("  K1 generator: " + " ".join(f"{c:+d}*{label}" for label, c in vec.items() if c))
    meta = {"block_order": [b.name for b in g.blocks], "vertex_order": list(g.vertices),
            "note": "vertex classes are in Smith-form coordinates; only the group is canonical"}
    return result, lines, meta


def cmd_hsat(g, opts, args):
    if not args:
        raise UsageError("usage: hsat FILE (list | close V...)")
    action, rest = args[0], args[1:]
    if action == "list":
        _need(rest, 0, "hsat FILE list")
        lat = enumerate_lattice(g)
        members = [_ordered(g, H) for H in lat.members]
        result = {"members": members, "meet": [list(r) for r in lat.meet], "join": [list(r) for r in lat.join]}
        lines = [f"{len(members)} hereditary C-saturated sets:"]
        lines += [f"  {i}: {_fmt_set(g, H)}" for i, H in enumerate(lat.members)]
        lines.append("meet:")
        lines += ["  " + " ".join(map(str, row)) for row in lat.meet]
        lines.append("join:")
        lines += ["  " + " ".join(map(str, row)) for row in lat.join]
        return result, lines, {}
    if action == "close":
        H = closure(g, rest)
        return {"closure": _ordered(g, H)}, [_fmt_set(g, H)], {}
    raise UsageError(f"unknown hsat action {action!r}; use list or close")


def cmd_quotient(g, opts, args):
    _need(args, 0, "quotient FILE -H V...")
    q = quotient(g, opts.H)
    text = serialize_graph(q)
    return {"H": _ordered(g, set(opts.H)), "graph": text}, [text.rstrip("\n")], {}


def _algebra(g, opts):
    limit = opts.step_limit or DEFAULT_STEP_LIMIT
    return LeavittAlgebra(g, step_limit=limit)


def cmd_nf(g, opts, args):
    _need(args, 1, "nf FILE EXPR")
    alg = _algebra(g, opts)
    a = parse_element(args[0], alg)
    return ({"expression": args[0], "normal_form": str(a), "terms": alg.to_json(a)},
            [str(a)], alg.metadata())


def cmd_expect(g, opts, args):
    _need(args, 1, "expect FILE EXPR")
    alg = _algebra(g, opts)
    a = parse_element(args[0], alg)
    phi = phi_sep(g, a, limit=opts.step_limit or DEFAULT_EXPECTATION_LIMIT, threads=opts.threads)
    text = phi.format(alg)
    return ({"expression": args[0], "expectation": text, "values": phi.to_json()},
            [text], alg.metadata())


def cmd_monoid(g, opts, args):
    if not args:
        raise UsageError("usage: monoid FILE (eq X Y | group | relations)")
    action, rest = args[0], args[1:]
    if action == "eq":
        _need(rest, 2, "monoid FILE eq X Y [--depth N]")
        x, y = (parse_monoid_element(t, g) for t in rest)
        verdict = equal_bounded(g, x, y, opts.depth, opts.max_states)
        result = {"x": x.format(g.vertices), "y": y.format(g.vertices), "depth": opts.depth,
                  "verdict": verdict.value}
        return result, [verdict.value, f"  {result['x']} vs {result['y']}, depth {opts.depth}"], {}
    if action == "group":
        _need(rest, 0, "monoid FILE group")
        G = grothendieck_group(g)
        lines = [str(G)] + [f"  [{k}] -> ({', '.join(map(str, v))})" for k, v in G.generator_images.items()]
        return G.to_dict(), lines, {}
    if action == "relations":
        rels = [str(r) for r in relations(g)]
        return {"relations": rels}, rels, {}
    raise UsageError(f"unknown monoid action {action!r}; use eq, group or relations")


COMMANDS = {
    "validate": cmd_validate,
    "ktheory": cmd_ktheory,
    "hsat": cmd_hsat,
    "quotient": cmd_quotient,
    "nf": cmd_nf,
    "expect": cmd_expect,
    "monoid": cmd_monoid,
}


def run(opts) -> dict:
    """Execute a parsed command and return its report (raises on failure)."""
    if opts.command == "builtin":
        _need(opts.args, 1, "builtin NAME:PARAMS")
        g = build_builtin(opts.args[0])
        text = serialize_graph(g)
        return {"schema_version": SCHEMA_VERSION, "command": "builtin", "input_digest": _digest(g),
                "result": {"graph": text}, "metadata": {}, "text": [text.rstrip("\n")]}
    g, args = _load_graph(opts)
    result, lines, meta = COMMANDS[opts.command](g, opts, args)
    return {"schema_version": SCHEMA_VERSION, "command": opts.command, "input_digest": _digest(g),
            "result": result, "metadata": meta, "text": lines}


def _exit_code(exc) -> int:
    if isinstance(exc, ResourceLimit):
        return 3
    if isinstance(exc, (ParseError, UsageError, OSError)):
        return 1
    if isinstance(exc, SemanticError):
        return 2
    return 1


def main(argv=None) -> int:
    opts = build_parser().parse_args(argv)
    try:
        report = run(opts)
    except (SepGraphError, OSError) as exc:
        code = _exit_code(exc)
        kind = type(exc).__name__
        if opts.json:
            print(json.dumps({"schema_version": SCHEMA_VERSION, "command": opts.command,
                              "error": {"type": kind, "message": str(exc), "exit_code": code}},
                             indent=2))
        else:
            print(f"error: {kind}: {exc}", file=sys.stderr)
        return code
    text = report.pop("text")
    if opts.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(text))
    return 0


if __name__ == "__main__":
    sys.exit(main())
