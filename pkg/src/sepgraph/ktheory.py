"""K-theory of graph C*-algebras of finitely separated graphs.

K0 is the cokernel and K1 the kernel of ``1_C - A^t : Z^(C) -> Z^(E0)``,
whose column for a block X at vertex v is ``delta_v - sum_w a_X(v, w) delta_w``
with ``a_X(v, w)`` the number of edges of X from v to w.  The class of a
vertex v in K0 is the coset of ``delta_v``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import DirectedGraph, SeparatedGraph
from .intlin import AbelianGroupPresentation, IntMatrix, cokernel, kernel


@dataclass(frozen=True)
class SeparatedAdjacency:
    row_labels: tuple[str, ...]   # vertices
    col_labels: tuple[str, ...]   # block names
    matrix: IntMatrix


@dataclass(frozen=True)
class KTheoryResult:
    k0: AbelianGroupPresentation
    k1_rank: int
    k1_basis: tuple[dict, ...]    # each maps column label -> coefficient

    def summary(self) -> str:
        k1 = "0" if self.k1_rank == 0 else ("Z" if self.k1_rank == 1 else f"Z^{self.k1_rank}")
        return f"K0 = {self.k0}, K1 = {k1}"

    def to_dict(self) -> dict:
        return {
            "k0": self.k0.to_dict(),
            "k1": {"rank": self.k1_rank, "basis": [dict(b) for b in self.k1_basis]},
            "summary": self.summary(),
        }


def adjacency(g: SeparatedGraph) -> SeparatedAdjacency:
    index = {v: i for i, v in enumerate(g.vertices)}
    columns = []
    for b in g.blocks:
        col = [0] * len(g.vertices)
        col[index[b.vertex]] += 1
        for e in b.edges:
            col[index[g.range(e)]] -= 1
        columns.append(col)
    rows = [[c[i] for c in columns] for i in range(len(g.vertices))]
    return SeparatedAdjacency(tuple(g.vertices), tuple(b.name for b in g.blocks),
                              IntMatrix.from_rows(rows, len(columns)))


def _from_matrix(adj: SeparatedAdjacency) -> KTheoryResult:
    k0 = cokernel(adj.matrix, adj.row_labels)
    basis = tuple(dict(zip(adj.col_labels, vec)) for vec in kernel(adj.matrix))
    return KTheoryResult(k0, len(basis), basis)


def k_theory(g: SeparatedGraph) -> KTheoryResult:
    return _from_matrix(adjacency(g))


def classical_adjacency(graph: DirectedGraph | SeparatedGraph) -> SeparatedAdjacency:
    """``1 - A_E^t`` for an ordinary graph, with the sink columns removed.

    Built from the vertex adjacency matrix (edge counts v -> w) rather than
    from blocks; columns are labelled by the non-sink vertices.
    """
    vertices = list(graph.vertices)
    index = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    counts = [[0] * n for _ in range(n)]
    for e in graph.edges:
        counts[index[e.source]][index[e.range]] += 1
    nonsinks = [v for v in vertices if any(counts[index[v]])]
    rows = [[int(i == index[c]) - counts[index[c]][i] for c in nonsinks] for i in range(n)]
    return SeparatedAdjacency(tuple(vertices), tuple(nonsinks), IntMatrix.from_rows(rows, len(nonsinks)))


def k_theory_classical(graph: DirectedGraph | SeparatedGraph) -> KTheoryResult:
    """K-theory of the ordinary graph C*-algebra C*(E); any separation is ignored."""
    return _from_matrix(classical_adjacency(graph))
