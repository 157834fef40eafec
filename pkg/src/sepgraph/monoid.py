"""The graph monoid M(E, C).

M(E, C) is the commutative monoid on generators ``a_v`` (one per vertex) with
one relation ``a_v = sum_{e in X} a_{r(e)}`` for every block X at v.  The word
problem is only searched up to a bound, so equality answers may be UNKNOWN.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ExprSyntaxError, UnknownVertex
from .graph import SeparatedGraph
from .intlin import AbelianGroupPresentation, IntMatrix, cokernel

DEFAULT_MAX_STATES = 10_000


class MonoidElement:
    """A finitely supported multiset of generators, stored without zeros."""

    __slots__ = ("_items",)

    def __init__(self, counts: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        counts = Counter(dict(counts) if not isinstance(counts, Mapping) else counts)
        if any(c < 0 for c in counts.values()):
            raise ValueError("monoid elements have nonnegative multiplicities")
        object.__setattr__(self, "_items", tuple(sorted((v, c) for v, c in counts.items() if c)))

    @classmethod
    def generator(cls, vertex: str, times: int = 1) -> "MonoidElement":
        return cls({vertex: times})

    def counts(self) -> dict:
        return dict(self._items)

    def __getitem__(self, vertex):
        return dict(self._items).get(vertex, 0)

    def __add__(self, other):
        return MonoidElement(Counter(self.counts()) + Counter(other.counts()))

    def __eq__(self, other):
        return isinstance(other, MonoidElement) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __setattr__(self, key, value):
        raise AttributeError("MonoidElement is immutable")

    def __bool__(self):
        return bool(self._items)

    def format(self, order: Iterable[str] | None = None) -> str:
        items = self.counts()
        if not items:
            return "0"
        keys = [v for v in order if v in items] if order is not None else sorted(items)
        return " + ".join(f"a_{v}" if items[v] == 1 else f"{items[v]} a_{v}" for v in keys)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MonoidElement({self.format()!r})"


_TERM = re.compile(r"\s*(?:(\d+)\s*)?a_([A-Za-z_][A-Za-z0-9_]*)\s*\Z")


def parse_monoid_element(text: str, g: SeparatedGraph | None = None) -> MonoidElement:
    """Parse ``a_v + 2 a_w`` (or ``0``) into a :class:`MonoidElement`."""
    if text.strip() == "0":
        return MonoidElement()
    counts = Counter()
    col = 1
    for chunk in text.split("+"):
        m = _TERM.match(chunk)
        if m is None:
            raise ExprSyntaxError(f"bad monoid term {chunk.strip()!r}", 1, col)
        vertex = m.group(2)
        if g is not None and not g.has_vertex(vertex):
            raise UnknownVertex(f"unknown vertex {vertex!r}")
        counts[vertex] += int(m.group(1) or 1)
        col += len(chunk) + 1
    return MonoidElement(counts)


@dataclass(frozen=True)
class MonoidRelation:
    vertex: str
    block: str
    left: MonoidElement
    right: MonoidElement

    def __str__(self):
        return f"{self.left.format()} = {self.right.format()}"


def relations(g: SeparatedGraph) -> list[MonoidRelation]:
    out = []
    for b in g.blocks:
        right = MonoidElement(Counter(g.range(e) for e in b.edges))
        out.append(MonoidRelation(b.vertex, b.name, MonoidElement.generator(b.vertex), right))
    return out


def _replace(x: Counter, old: MonoidElement, new: MonoidElement):
    if any(x[v] < c for v, c in old._items):
        return None
    y = Counter(x)
    y.subtract(old.counts())
    y.update(new.counts())
    return MonoidElement(y)


def neighbors(g: SeparatedGraph, x: MonoidElement, rels=None) -> set:
    """Everything reachable from x by rewriting one occurrence of one relation side."""
    rels = relations(g) if rels is None else rels
    counts = Counter(x.counts())
    out = set()
    for rel in rels:
        for old, new in ((rel.left, rel.right), (rel.right, rel.left)):
            y = _replace(counts, old, new)
            if y is not None:
                out.add(y)
    return out


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


def equal_bounded(g: SeparatedGraph, x: MonoidElement, y: MonoidElement, max_steps: int,
                  max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    """Decide x = y in M(E, C) using chains of at most ``max_steps`` moves.

    Both sides are explored breadth-first in lockstep, each to depth at most
    ``max_steps``.  YES when a common state is found with depth sum within the
    bound; NO when either side's connected component is exhausted first
    (which proves the two components differ); otherwise UNKNOWN.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be nonnegative")
    if x == y:
        return Verdict.YES
    rels = relations(g)
    depth = [{x: 0}, {y: 0}]
    frontier = [[x], [y]]
    levels = [0, 0]
    side = 0
    while True:
        if levels[0] >= max_steps and levels[1] >= max_steps:
            return Verdict.UNKNOWN
        if levels[side] >= max_steps:
            side = 1 - side
        mine, other = depth[side], depth[1 - side]
        nxt = []
        for state in frontier[side]:
            for nb in sorted(neighbors(g, state, rels), key=lambda m: m._items):
                if nb in mine:
                    continue
                mine[nb] = levels[side] + 1
                nxt.append(nb)
                if nb in other and mine[nb] + other[nb] <= max_steps:
                    return Verdict.YES
        levels[side] += 1
        frontier[side] = nxt
        if not nxt:
            return Verdict.NO
        if len(depth[0]) + len(depth[1]) > max_states:
            return Verdict.UNKNOWN
        side = 1 - side


def relation_matrix(g: SeparatedGraph) -> IntMatrix:
    """One column per relation: coefficients of ``a_v - sum a_{r(e)}``."""
    index = {v: i for i, v in enumerate(g.vertices)}
    cols = []
    for rel in relations(g):
        col = [0] * len(index)
        for v, c in rel.left.counts().items():
            col[index[v]] += c
        for v, c in rel.right.counts().items():
            col[index[v]] -= c
        cols.append(col)
    return IntMatrix.from_rows([[c[i] for c in cols] for i in range(len(index))], len(cols))


def grothendieck_group(g: SeparatedGraph) -> AbelianGroupPresentation:
    """Universal group of M(E, C); generator labels are ``a_<vertex>``."""
    return cokernel(relation_matrix(g), [f"a_{v}" for v in g.vertices])


def group_image(G: AbelianGroupPresentation, x: MonoidElement) -> tuple[int, ...]:
    """Coordinates of x in G, torsion coordinates reduced."""
    width = G.rank + len(G.invariant_factors)
    total = [0] * width
    for v, c in x.counts().items():
        for i, val in enumerate(G.generator_images[f"a_{v}"]):
            total[i] += c * val
    for k, d in enumerate(G.invariant_factors):
        total[G.rank + k] %= d
    return tuple(total)
