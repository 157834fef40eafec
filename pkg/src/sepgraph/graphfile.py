"""Line-oriented text format for separated graphs.

::

    # comment
    vertex <name>
    edge <name> <source> <range>
    block <vertex> <blockname> <edge> [<edge> ...]
    block <vertex> <edge> [<edge> ...]          # auto-named B1, B2, ...

A block line whose second argument is a declared edge has no name.  With ``auto_trivial=True`` edges left out of every block line are gathered,
per vertex, into one extra block named ``T_<vertex>``.
"""

from __future__ import annotations

from .errors import GraphSyntaxError
from .graph import Block, Edge, SeparatedGraph, is_identifier, trivial_block_name

_ARITY = {"vertex": (1, 1), "edge": (3, 3), "block": (2, None)}


def _tokens(line):
    """Split on whitespace, keeping 1-based column numbers."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_graph(text: str, auto_trivial: bool = False) -> SeparatedGraph:
    vertices, edges, blocks = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        (word, col), args = toks[0], toks[1:]
        if word not in _ARITY:
            raise GraphSyntaxError(f"unknown directive {word!r}", lineno, col)
        lo, hi = _ARITY[word]
        if len(args) < lo or (hi is not None and len(args) > hi):
            raise GraphSyntaxError(f"wrong number of arguments for {word!r}", lineno, col)
        for tok, tcol in args:
            if not is_identifier(tok):
                raise GraphSyntaxError(f"invalid name {tok!r}", lineno, tcol)
        names = [t for t, _ in args]
        if word == "vertex":
            vertices.append(names[0])
        elif word == "edge":
            edges.append(Edge(*names))
        else:
            blocks.append((names, lineno))

    edge_names = {e.name for e in edges}
    named = [(names, lineno) for names, lineno in blocks if names[1] not in edge_names]
    used = {names[1] for names, _ in named}
    counter = 0
    parsed = []
    for names, lineno in blocks:
        if names[1] in edge_names:
            counter += 1
            while f"B{counter}" in used:
                counter += 1
            parsed.append(Block(f"B{counter}", names[0], tuple(names[1:])))
        elif len(names) < 3:
            raise GraphSyntaxError(f"block {names[1]!r} lists no edges", lineno, 1)
        else:
            parsed.append(Block(names[1], names[0], tuple(names[2:])))
    blocks = parsed

    if auto_trivial:
        assigned = {e for b in blocks for e in b.edges}
        for v in vertices:
            loose = tuple(e.name for e in edges if e.source == v and e.name not in assigned)
            if loose:
                blocks.append(Block(trivial_block_name(v), v, loose))
    return SeparatedGraph(vertices, edges, blocks)


def serialize_graph(g: SeparatedGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.name} {e.source} {e.range}" for e in g.edges]
    lines += [f"block {b.vertex} {b.name} " + " ".join(b.edges) for b in g.blocks]
    return "\n".join(lines) + "\n"
