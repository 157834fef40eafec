"""Separated graphs: data model, validation, builders and structural operations.

A separated graph is a directed graph together with, for every vertex, a
partition of its outgoing edges into nonempty named blocks.  Sinks carry no
blocks.  All objects here are immutable once built, and every constructor runs
the full invariant check, so a ``SeparatedGraph`` in hand is always valid.

Iteration order of vertices, edges and blocks is declaration order.  Equality
is structural and order-insensitive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    BlockAtWrongVertex,
    BlockIncomplete,
    BlockOverlap,
    DuplicateName,
    EmptyBlock,
    InvalidParameters,
    NotCSaturated,
    NotHereditary,
    UnknownBlock,
    UnknownEdge,
    UnknownVertex,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_identifier(name) -> bool:
    return isinstance(name, str) and _IDENT.match(name) is not None


def _check_name(name, kind):
    if not is_identifier(name):
        raise InvalidParameters(f"invalid {kind} name {name!r}")


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    range: str


@dataclass(frozen=True)
class Block:
    """One cell of the partition of a vertex's outgoing edges."""

    name: str
    vertex: str
    edges: tuple[str, ...]


@dataclass(frozen=True)
class DirectedGraph:
    """A plain directed graph with no separation data."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        _check_names(self.vertices, self.edges)


@dataclass(frozen=True)
class Path:
    """A finite path; the empty path is represented by its anchor vertex."""

    anchor: str
    edges: tuple[str, ...] = ()

    def __len__(self):
        return len(self.edges)


def _check_names(vertices, edges):
    seen = set()
    for v in vertices:
        _check_name(v, "vertex")
        if v in seen:
            raise DuplicateName(f"duplicate vertex name {v!r}")
        seen.add(v)
    vset = set(vertices)
    for e in edges:
        _check_name(e.name, "edge")
        if e.name in seen:
            raise DuplicateName(f"duplicate name {e.name!r}")
        seen.add(e.name)
        for end in (e.source, e.range):
            if end not in vset:
                raise UnknownVertex(f"edge {e.name!r} uses undeclared vertex {end!r}")


class SeparatedGraph:
    """A finite, finitely separated graph (E, C).

    Build one with :func:`validate`, :func:`trivially_separate`, a builder, or by
    calling the constructor directly with ``Edge`` and ``Block`` records.
    """

    __slots__ = (
        "vertices", "edges", "blocks", "_edge_map", "_block_map",
        "_partition", "_block_of", "_out",
    )

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge], blocks: Iterable[Block]):
        vertices = tuple(vertices)
        edges = tuple(edges)
        blocks = tuple(Block(b.name, b.vertex, tuple(b.edges)) for b in blocks)
        _check_names(vertices, edges)

        edge_map = {e.name: e for e in edges}
        out = {v: [] for v in vertices}
        for e in edges:
            out[e.source].append(e.name)

        block_map = {}
        block_of = {}
        partition = {v: [] for v in vertices}
        for b in blocks:
            _check_name(b.name, "block")
            if b.name in block_map:
                raise DuplicateName(f"duplicate block name {b.name!r}")
            if b.vertex not in partition:
                raise UnknownVertex(f"block {b.name!r} placed at undeclared vertex {b.vertex!r}")
            if not b.edges:
                raise EmptyBlock(f"block {b.name!r} at vertex {b.vertex!r} is empty")
            for name in b.edges:
                if name not in edge_map:
                    raise UnknownEdge(f"block {b.name!r} names undeclared edge {name!r}")
                if edge_map[name].source != b.vertex:
                    raise BlockAtWrongVertex(
                        f"block {b.name!r} at vertex {b.vertex!r} contains edge {name!r} "
                        f"whose source is {edge_map[name].source!r}")
                if name in block_of:
                    raise BlockOverlap(
                        f"edge {name!r} lies in blocks {block_of[name].name!r} and {b.name!r}")
                block_of[name] = b
            block_map[b.name] = b
            partition[b.vertex].append(b)
        for v in vertices:
            for name in out[v]:
                if name not in block_of:
                    raise BlockIncomplete(f"vertex {v!r}: edge {name!r} is in no block")

        set_ = object.__setattr__
        set_(self, "vertices", vertices)
        set_(self, "edges", edges)
        set_(self, "blocks", blocks)
        set_(self, "_edge_map", MappingProxyType(edge_map))
        set_(self, "_block_map", MappingProxyType(block_map))
        set_(self, "_partition", MappingProxyType({v: tuple(bs) for v, bs in partition.items()}))
        set_(self, "_block_of", MappingProxyType(block_of))
        set_(self, "_out", MappingProxyType({v: tuple(es) for v, es in out.items()}))

    def __setattr__(self, key, value):
        raise AttributeError("SeparatedGraph is immutable")

    # -- lookups -----------------------------------------------------------

    def edge(self, name: str) -> Edge:
        try:
            return self._edge_map[name]
        except KeyError:
            raise UnknownEdge(f"unknown edge {name!r}") from None

    def block(self, name: str) -> Block:
        try:
            return self._block_map[name]
        except KeyError:
            raise UnknownBlock(f"unknown block {name!r}") from None

    def block_of(self, edge: str) -> Block:
        try:
            return self._block_of[edge]
        except KeyError:
            raise UnknownEdge(f"unknown edge {edge!r}") from None

    def partition(self, vertex: str) -> tuple[Block, ...]:
        if vertex not in self._partition:
            raise UnknownVertex(f"unknown vertex {vertex!r}")
        return self._partition[vertex]

    def out_edges(self, vertex: str) -> tuple[str, ...]:
        if vertex not in self._out:
            raise UnknownVertex(f"unknown vertex {vertex!r}")
        return self._out[vertex]

    def has_vertex(self, name) -> bool:
        return name in self._partition

    def has_edge(self, name) -> bool:
        return name in self._edge_map

    def source(self, edge: str) -> str:
        return self.edge(edge).source

    def range(self, edge: str) -> str:
        return self.edge(edge).range

    def is_sink(self, vertex: str) -> bool:
        return not self.out_edges(vertex)

    def is_trivially_separated(self) -> bool:
        return all(len(self.partition(v)) == (0 if self.is_sink(v) else 1) for v in self.vertices)

    def underlying(self) -> DirectedGraph:
        return DirectedGraph(self.vertices, self.edges)

    def path(self, edges: Sequence[str], anchor: str | None = None) -> Path:
        """Check that ``edges`` compose and return them as a :class:`Path`."""
        edges = tuple(edges)
        if not edges:
            if anchor is None or not self.has_vertex(anchor):
                raise UnknownVertex(f"empty path needs a known anchor vertex, got {anchor!r}")
            return Path(anchor)
        for a, b in zip(edges, edges[1:]):
            if self.range(a) != self.source(b):
                raise InvalidParameters(f"edges {a!r} and {b!r} do not compose")
        start = self.source(edges[0])
        if anchor is not None and anchor != start:
            raise InvalidParameters(f"path starts at {start!r}, not {anchor!r}")
        return Path(start, edges)

    # -- identity ------------------------------------------------------------

    def _key(self):
        return (
            frozenset(self.vertices),
            frozenset(self.edges),
            frozenset((b.name, b.vertex, frozenset(b.edges)) for b in self.blocks),
        )

    def __eq__(self, other):
        if not isinstance(other, SeparatedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"SeparatedGraph({len(self.vertices)} vertices, {len(self.edges)} edges, "
                f"blocks={[b.name for b in self.blocks]})")


# -- construction --------------------------------------------------------------

def _as_edge(item) -> Edge:
    if isinstance(item, Edge):
        return item
    if isinstance(item, Mapping):
        return Edge(item["name"], item["source"], item["range"])
    name, source, range_ = item
    return Edge(name, source, range_)


def _as_block(item) -> Block:
    if isinstance(item, Block):
        return item
    if isinstance(item, Mapping):
        return Block(item["name"], item["vertex"], tuple(item["edges"]))
    vertex, name, edges = item
    return Block(name, vertex, tuple(edges))


def validate(description: Mapping) -> SeparatedGraph:
    """Build a graph from a raw description, checking every invariant.

    ``description`` maps ``"vertices"`` to names, ``"edges"`` to
    ``(name, source, range)`` triples and ``"blocks"`` to
    ``(vertex, block_name, edges)`` triples.  Mappings with the same keys as
    :class:`Edge` / :class:`Block` fields are accepted as well.
    """
    vertices = list(description.get("vertices", ()))
    edges = [_as_edge(e) for e in description.get("edges", ())]
    blocks = [_as_block(b) for b in description.get("blocks", ())]
    return SeparatedGraph(vertices, edges, blocks)


def trivial_block_name(vertex: str) -> str:
    return f"T_{vertex}"


def trivially_separate(graph, block_names: Mapping[str, str] | None = None) -> SeparatedGraph:
    """Give each non-sink vertex the single block of all its outgoing edges.

    ``graph`` is a :class:`DirectedGraph`, a :class:`SeparatedGraph` (whose
    separation is discarded) or a raw ``{"vertices", "edges"}`` mapping.
    Blocks are named ``T_<vertex>`` unless ``block_names`` says otherwise.
    """
    if isinstance(graph, (DirectedGraph, SeparatedGraph)):
        vertices, edges = graph.vertices, graph.edges
    else:
        vertices = tuple(graph.get("vertices", ()))
        edges = tuple(_as_edge(e) for e in graph.get("edges", ()))
    _check_names(vertices, edges)
    block_names = block_names or {}
    blocks = []
    for v in vertices:
        out = tuple(e.name for e in edges if e.source == v)
        if out:
            blocks.append(Block(block_names.get(v, trivial_block_name(v)), v, out))
    return SeparatedGraph(vertices, edges, blocks)


def block_subgraph(g: SeparatedGraph, block: str) -> SeparatedGraph:
    """The graph E_X: all vertices of ``g``, only the edges of block ``block``."""
    b = g.block(block)
    members = set(b.edges)
    return SeparatedGraph(g.vertices, [e for e in g.edges if e.name in members], [b])


# -- builtins ------------------------------------------------------------------

def build_emn(m: int, n: int) -> SeparatedGraph:
    """E(m, n): vertices v, w; n edges a1..an and m edges b1..bm, all v -> w.

    Blocks: X = {a1..an}, Y = {b1..bm}.
    """
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or m > n:
        raise InvalidParameters(f"E(m,n) needs 1 <= m <= n, got m={m}, n={n}")
    alphas = [f"a{i}" for i in range(1, n + 1)]
    betas = [f"b{j}" for j in range(1, m + 1)]
    edges = [Edge(a, "v", "w") for a in alphas] + [Edge(b, "v", "w") for b in betas]
    return SeparatedGraph(("v", "w"), edges, [Block("X", "v", tuple(alphas)), Block("Y", "v", tuple(betas))])


def build_rose(n: int) -> SeparatedGraph:
    """One vertex v with n loops e1..en, trivially separated (block X)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameters(f"rose needs n >= 1, got {n}")
    loops = tuple(f"e{i}" for i in range(1, n + 1))
    return SeparatedGraph(("v",), [Edge(e, "v", "v") for e in loops], [Block("X", "v", loops)])


def build_hbk(k: int, l: int, m: int, n: int) -> SeparatedGraph:
    """Three-vertex graph with two blocks at v splitting edges towards w1 and w2.

    Edges a1..ak, b1..bl go v -> w1; c1..cm, d1..dn go v -> w2.
    Blocks X = {a*, c*} and Y = {b*, d*}.
    """
    params = (k, l, m, n)
    if not all(isinstance(p, int) and p >= 1 for p in params):
        raise InvalidParameters(f"hbk needs positive parameters, got {params}")
    groups = {}
    edges = []
    for prefix, count, target in (("a", k, "w1"), ("b", l, "w1"), ("c", m, "w2"), ("d", n, "w2")):
        groups[prefix] = tuple(f"{prefix}{i}" for i in range(1, count + 1))
        edges.extend(Edge(e, "v", target) for e in groups[prefix])
    blocks = [Block("X", "v", groups["a"] + groups["c"]), Block("Y", "v", groups["b"] + groups["d"])]
    return SeparatedGraph(("v", "w1", "w2"), edges, blocks)


BUILTINS = {"emn": (build_emn, 2), "rose": (build_rose, 1), "hbk": (build_hbk, 4)}


def build_builtin(text: str) -> SeparatedGraph:
    """Build a graph from a ``name:p1,p2,...`` string such as ``emn:2,3``."""
    name, _, params = text.partition(":")
    if name not in BUILTINS:
        raise InvalidParameters(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    builder, arity = BUILTINS[name]
    try:
        args = [int(p) for p in params.split(",")] if params else []
    except ValueError:
        raise InvalidParameters(f"builtin parameters must be integers: {params!r}") from None
    if len(args) != arity:
        raise InvalidParameters(f"builtin {name!r} takes {arity} parameter(s), got {len(args)}")
    return builder(*args)


# -- quotients and morphisms ---------------------------------------------------

def quotient(g: SeparatedGraph, H: Iterable[str]) -> SeparatedGraph:
    """The quotient graph (E/H, C/H) by a hereditary C-saturated vertex set."""
    from .hereditary import is_c_saturated, is_hereditary

    H = frozenset(H)
    if not is_hereditary(g, H):
        raise NotHereditary(f"{sorted(H)} is not hereditary")
    if not is_c_saturated(g, H):
        raise NotCSaturated(f"{sorted(H)} is not C-saturated")
    vertices = [v for v in g.vertices if v not in H]
    edges = [e for e in g.edges if e.range not in H]
    kept = {e.name for e in edges}
    blocks = []
    for b in g.blocks:
        if b.vertex in H:
            continue
        # nonempty by C-saturation; the constructor re-checks
        blocks.append(Block(b.name, b.vertex, tuple(e for e in b.edges if e in kept)))
    return SeparatedGraph(vertices, edges, blocks)


def is_complete_subobject(sub: SeparatedGraph, g: SeparatedGraph) -> bool:
    """True iff ``sub`` is a subgraph of ``g`` whose blocks are blocks of ``g``."""
    if not set(sub.vertices) <= set(g.vertices):
        return False
    for e in sub.edges:
        if not g.has_edge(e.name) or g.edge(e.name) != e:
            return False
    g_blocks = {(b.vertex, frozenset(b.edges)) for b in g.blocks}
    return all((b.vertex, frozenset(b.edges)) in g_blocks for b in sub.blocks)


def is_fsgr_morphism(F: SeparatedGraph, E: SeparatedGraph,
                     on_vertices: Mapping[str, str], on_edges: Mapping[str, str]) -> bool:
    """Check that a pair of maps is a morphism of finitely separated graphs.

    It must be a graph morphism, injective on vertices, and map every block
    of ``F`` bijectively onto some block at the image vertex in ``E``.
    """
    if set(on_vertices) != set(F.vertices) or set(on_edges) != {e.name for e in F.edges}:
        return False
    if not all(E.has_vertex(v) for v in on_vertices.values()):
        return False
    if not all(E.has_edge(e) for e in on_edges.values()):
        return False
    if len(set(on_vertices.values())) != len(on_vertices):
        return False
    for e in F.edges:
        image = E.edge(on_edges[e.name])
        if image.source != on_vertices[e.source] or image.range != on_vertices[e.range]:
            return False
    for b in F.blocks:
        images = [on_edges[e] for e in b.edges]
        if len(set(images)) != len(images):
            return False
        target = frozenset(images)
        if not any(frozenset(c.edges) == target for c in E.partition(on_vertices[b.vertex])):
            return False
    return True
