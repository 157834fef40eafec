"""Exact integer linear algebra over Python's arbitrary-precision ints.

The central routine is :func:`smith_normal_form`, which returns unimodular
transforms ``U`` and ``V`` with ``U @ A @ V == D``.  Cokernels and kernels of
maps between free abelian groups are read off from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import LabelCountMismatch


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValueError(f"{len(self.entries)} entries do not fit a {self.rows}x{self.cols} matrix")
        if not all(isinstance(x, int) for x in self.entries):
            raise TypeError("IntMatrix entries must be ints")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self[i, j] for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(self[i, j] * x[j] for j in range(self.cols)) for i in range(self.rows))

    def det(self) -> int:
        """Determinant by Bareiss fraction-free elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms, pivoting on the smallest |entry|.

    The diagonal of ``D`` is nonnegative, each entry divides the next, and the
    zero entries come last.
    """
    m, n = A.rows, A.cols
    D = A.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        for M in (D, U):
            M[dst] = [x + q * y for x, y in zip(M[dst], M[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
            # a nonzero remainder is smaller than the pivot; promote it and go again
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            for M in (D, U):
                M[t] = [-x for x in M[t]]

    return SmithDecomposition(IntMatrix.from_rows(U, m), IntMatrix.from_rows(D, n), IntMatrix.from_rows(V, n))


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """Z^rank + Z/d1 + ... + Z/dk, plus coordinates of labelled generators.

    ``generator_images[label]`` lists ``rank`` free coordinates followed by one
    coordinate per invariant factor, reduced modulo that factor.  These
    coordinates depend on the chosen Smith transform; the group does not.
    """

    rank: int
    invariant_factors: tuple[int, ...] = ()
    generator_images: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    def order(self) -> int | None:
        """Number of elements, or None when the group is infinite."""
        if self.rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "invariant_factors": list(self.invariant_factors),
            "generator_images": {k: list(v) for k, v in self.generator_images.items()},
            "description": str(self),
        }


def cokernel(A: IntMatrix, row_labels: Sequence[str]) -> AbelianGroupPresentation:
    """Presentation of Z^rows / A(Z^cols) with the class of each basis vector."""
    row_labels = list(row_labels)
    if len(row_labels) != A.rows:
        raise LabelCountMismatch(f"{len(row_labels)} labels for {A.rows} rows")
    snf = smith_normal_form(A)
    diag = list(snf.diagonal) + [0] * (A.rows - min(A.rows, A.cols))
    free = [i for i, d in enumerate(diag) if d == 0]
    torsion = [i for i, d in enumerate(diag) if d > 1]
    images = {}
    for j, label in enumerate(row_labels):
        col = snf.U.column(j)
        images[label] = tuple(col[i] for i in free) + tuple(col[i] % diag[i] for i in torsion)
    return AbelianGroupPresentation(len(free), tuple(diag[i] for i in torsion), images)


def kernel(A: IntMatrix) -> list[tuple[int, ...]]:
    """A Z-basis of {x in Z^cols : A x = 0}."""
    snf = smith_normal_form(A)
    rank = sum(1 for d in snf.diagonal if d)
    return [snf.V.column(j) for j in range(rank, A.cols)]


def groups_isomorphic(g1: AbelianGroupPresentation, g2: AbelianGroupPresentation) -> bool:
    return g1.rank == g2.rank and tuple(g1.invariant_factors) == tuple(g2.invariant_factors)
