"""Hereditary and C-saturated vertex sets, their closure, and the lattice they form.

H is hereditary when it is closed under forward reachability, and
C-saturated when any vertex having a block whose edges all land in H is
itself in H.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import TooLarge, UnknownVertex
from .graph import SeparatedGraph

MAX_LATTICE_VERTICES = 20


def _as_set(g: SeparatedGraph, H: Iterable[str]) -> frozenset:
    H = frozenset(H)
    for v in H:
        if not g.has_vertex(v):
            raise UnknownVertex(f"unknown vertex {v!r}")
    return H


def reachable(g: SeparatedGraph, start: Iterable[str]) -> frozenset:
    """All vertices w with v >= w for some v in ``start`` (paths of length >= 0)."""
    seen = set(start)
    stack = list(seen)
    while stack:
        v = stack.pop()
        for e in g.out_edges(v):
            w = g.range(e)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def is_hereditary(g: SeparatedGraph, H: Iterable[str]) -> bool:
    H = _as_set(g, H)
    return all(g.range(e) in H for v in H for e in g.out_edges(v))


def _saturation_violators(g, H):
    """Vertices outside H owning a block whose ranges all lie in H."""
    return [v for v in g.vertices if v not in H
            and any(all(g.range(e) in H for e in b.edges) for b in g.partition(v))]


def is_c_saturated(g: SeparatedGraph, H: Iterable[str]) -> bool:
    return not _saturation_violators(g, _as_set(g, H))


def is_saturated(g: SeparatedGraph, H: Iterable[str]) -> bool:
    """Saturation for the underlying non-separated graph (one block per non-sink)."""
    H = _as_set(g, H)
    return not any(v not in H and g.out_edges(v) and all(g.range(e) in H for e in g.out_edges(v))
                   for v in g.vertices)


def closure(g: SeparatedGraph, S: Iterable[str]) -> frozenset:
    """Smallest hereditary C-saturated set containing S."""
    H = reachable(g, _as_set(g, S))
    while True:
        extra = _saturation_violators(g, H)
        if not extra:
            return H
        H = reachable(g, H | set(extra))


def _canonical_key(g, H):
    order = {v: i for i, v in enumerate(g.vertices)}
    return (len(H), sorted(order[v] for v in H))


@dataclass(frozen=True)
class HereditaryLattice:
    """Members in canonical order (by size, then by vertex declaration order).

    ``meet[i][j]`` and ``join[i][j]`` are indices into ``members``.
    """

    members: tuple[frozenset, ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]

    def index(self, H) -> int:
        return self.members.index(frozenset(H))

    def __len__(self):
        return len(self.members)


def enumerate_lattice(g: SeparatedGraph) -> HereditaryLattice:
    if len(g.vertices) > MAX_LATTICE_VERTICES:
        raise TooLarge(f"lattice enumeration is limited to {MAX_LATTICE_VERTICES} vertices, "
                       f"graph has {len(g.vertices)}")
    # every hereditary set is a union of principal ones, so grow unions from the empty set
    principal = [reachable(g, [v]) for v in g.vertices]
    hereditary = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for H in frontier:
            for T in principal:
                if not T <= H:
                    U = H | T
                    if U not in hereditary:
                        hereditary.add(U)
                        nxt.append(U)
        frontier = nxt
    members = sorted((H for H in hereditary if not _saturation_violators(g, H)),
                     key=lambda H: _canonical_key(g, H))
    pos = {H: i for i, H in enumerate(members)}
    meet = tuple(tuple(pos[a & b] for b in members) for a in members)
    join = tuple(tuple(pos[closure(g, a | b)] for b in members) for a in members)
    return HereditaryLattice(tuple(members), meet, join)
