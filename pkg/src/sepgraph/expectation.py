"""Canonical conditional expectations onto the vertex algebra A0 = C0(E0).

For an ordinary row-finite graph the expectation is given in closed form on
``gamma nu*``: it vanishes unless gamma == nu, and otherwise equals
``s(gamma) / n_gamma`` where ``n_gamma`` multiplies the out-degrees of the
sources of the edges of gamma.

For a separated graph the algebra is the free product over A0 of the block
algebras L(E_X), and the expectation is the free-product one: it restricts
to the closed form on each block algebra and kills every alternating
product of centred elements from different blocks.  :func:`phi_sep`
evaluates it on a monomial by cutting the word into maximal single-block
segments and recursively splitting each factor ``m = Phi_X(m) + (m - Phi_X(m))``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .errors import (
    BlockMismatch,
    InvariantViolation,
    NotTriviallySeparated,
    StepLimitExceeded,
)
from .graph import Block, SeparatedGraph
from .leavitt import Element, LeavittAlgebra, Monomial, algebra_for
from .scalars import ONE, Scalar

DEFAULT_EXPECTATION_LIMIT = 10 ** 6


class VertexFunction:
    """A finitely supported function E0 -> Q(i); an element of A0."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping[str, object] = ()):
        values = dict(values)
        object.__setattr__(self, "values", MappingProxyType(
            {v: Scalar.coerce(c) for v, c in values.items() if c}))

    def __setattr__(self, key, value):
        raise AttributeError("VertexFunction is immutable")

    def __getitem__(self, v) -> Scalar:
        return self.values.get(v, Scalar(0))

    def __add__(self, other: "VertexFunction") -> "VertexFunction":
        out = dict(self.values)
        for v, c in other.values.items():
            out[v] = out.get(v, 0) + c
        return VertexFunction(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "VertexFunction":
        c = Scalar.coerce(c)
        return VertexFunction({v: c * x for v, x in self.values.items()})

    def __mul__(self, other):
        if isinstance(other, VertexFunction):
            return VertexFunction({v: c * other[v] for v, c in self.values.items()})
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, VertexFunction):
            return dict(self.values) == dict(other.values)
        if other == 0:
            return not self.values
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def __bool__(self):
        return bool(self.values)

    def to_element(self, algebra: LeavittAlgebra) -> Element:
        return algebra.raw({Monomial(v): c for v, c in self.values.items()})

    @classmethod
    def from_element(cls, a: Element) -> "VertexFunction":
        if any(not m.is_vertex for m in a.terms):
            raise ValueError(f"{a} is not a combination of vertices")
        return cls({m.anchor: c for m, c in a.terms.items()})

    def format(self, algebra: LeavittAlgebra) -> str:
        return algebra.format(self.to_element(algebra))

    def to_json(self) -> dict:
        return {v: str(c) for v, c in self.values.items()}

    def __repr__(self):
        inner = ", ".join(f"{v}: {c}" for v, c in self.values.items())
        return f"VertexFunction({{{inner}}})"


@dataclass(frozen=True)
class BlockFactor:
    block: str
    element: Element
    centered: bool


def _split_shape(alg: LeavittAlgebra, m: Monomial):
    """Return (gamma, nu) for a word of shape gamma nu*, checking the shape."""
    letters = m.letters
    k = 0
    while k < len(letters) and not letters[k].ghost:
        k += 1
    if not all(l.ghost for l in letters[k:]):
        raise InvariantViolation(f"monomial {m} is not of the form gamma nu*")
    gamma = tuple(l.edge for l in letters[:k])
    nu = tuple(l.edge for l in reversed(letters[k:]))
    return gamma, nu


def _closed_form(alg: LeavittAlgebra, a: Element, out_degree) -> VertexFunction:
    out = {}
    for m, c in a.terms.items():
        if m.is_vertex:
            out[m.anchor] = out.get(m.anchor, 0) + c
            continue
        gamma, nu = _split_shape(alg, m)
        if gamma != nu:
            continue
        weight = 1
        for e in gamma:
            weight *= out_degree(alg.graph.source(e))
        out[m.anchor] = out.get(m.anchor, 0) + c * Fraction(1, weight)
    return VertexFunction(out)


def phi_graph(g: SeparatedGraph, a: Element) -> VertexFunction:
    """Closed-form expectation for a trivially separated graph."""
    if not g.is_trivially_separated():
        raise NotTriviallySeparated("phi_graph needs one block per non-sink vertex")
    alg = algebra_for(g)
    a = alg.adopt(a)
    return _closed_form(alg, a, lambda v: len(g.out_edges(v)))


def _block_expectation(alg: LeavittAlgebra, block: Block, a: Element) -> VertexFunction:
    """Phi_X: the closed form inside E_X, where the only out-degree is |X| at X's vertex."""
    size = len(block.edges)
    return _closed_form(alg, a, lambda v: size if v == block.vertex else 0)


def _in_block(block: Block, a: Element) -> bool:
    members = set(block.edges)
    return all(l.edge in members for m in a.terms for l in m.letters)


def center(g: SeparatedGraph, block: str, m: Element) -> tuple[VertexFunction, BlockFactor]:
    """Split m = Phi_X(m) + m0 with Phi_X(m0) = 0."""
    alg = algebra_for(g)
    m = alg.adopt(m)
    b = g.block(block)
    if not _in_block(b, m):
        raise BlockMismatch(f"{m} is not supported on the letters of block {block!r}")
    phi = _block_expectation(alg, b, m)
    return phi, BlockFactor(block, m - phi.to_element(alg), True)


class _FreeProductEvaluator:
    """Memoised recursion over lists of block factors.

    A factor is ``(block_name or None, element, centered)``; block None marks
    an A0-valued factor waiting to be absorbed by a neighbour.
    """

    def __init__(self, alg: LeavittAlgebra, limit: int):
        self.alg = alg
        self.limit = limit
        self.calls = 0
        self.memo = {}

    def monomial(self, m: Monomial) -> VertexFunction:
        if m.is_vertex:
            return VertexFunction({m.anchor: ONE})
        alg = self.alg
        factors = []
        start = 0
        letters = m.letters
        for i in range(1, len(letters) + 1):
            if i == len(letters) or alg.letter_block(letters[i]) != alg.letter_block(letters[start]):
                seg = Monomial(alg.letter_source(letters[start]), letters[start:i])
                block = alg.letter_block(letters[start])
                _split_shape(alg, seg)
                factors.append((block, alg.raw({seg: ONE}), False))
                start = i
        return self.evaluate(tuple(factors))

    @staticmethod
    def _key(factors):
        return tuple((b, frozenset(el.terms.items()), c) for b, el, c in factors)

    def _tidy(self, factors):
        """Absorb A0 factors into neighbours and fuse equal-block neighbours."""
        factors = list(factors)
        changed = True
        while changed:
            changed = False
            for i, (block, el, _) in enumerate(factors):
                if block is None and len(factors) > 1:
                    if i + 1 < len(factors):
                        nb, nel, nc = factors[i + 1]
                        factors[i:i + 2] = [(nb, el * nel, nc)]
                    else:
                        nb, nel, nc = factors[i - 1]
                        factors[i - 1:i + 1] = [(nb, nel * el, nc)]
                    changed = True
                    break
            if changed:
                continue
            for i in range(len(factors) - 1):
                if factors[i][0] == factors[i + 1][0]:
                    block = factors[i][0]
                    factors[i:i + 2] = [(block, factors[i][1] * factors[i + 1][1], False)]
                    changed = True
                    break
        return factors

    def evaluate(self, factors) -> VertexFunction:
        key = self._key(factors)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        if self.calls > self.limit:
            raise StepLimitExceeded(f"expectation recursion exceeded {self.limit} steps")
        result = self._evaluate(factors)
        self.memo[key] = result
        return result

    def _evaluate(self, factors) -> VertexFunction:
        if any(el.is_zero() for _, el, _ in factors):
            return VertexFunction()
        factors = self._tidy(factors)
        if any(el.is_zero() for _, el, _ in factors):
            return VertexFunction()
        if len(factors) == 1:
            block, el, _ = factors[0]
            if block is None:
                return VertexFunction.from_element(el)
            return _block_expectation(self.alg, self.alg.graph.block(block), el)
        pending = [i for i, f in enumerate(factors) if not f[2]]
        if not pending:
            return VertexFunction()  # alternating centred product
        i = pending[0]
        block, el, _ = factors[i]
        phi = _block_expectation(self.alg, self.alg.graph.block(block), el)
        phi_el = phi.to_element(self.alg)
        centred = factors[:i] + [(block, el - phi_el, True)] + factors[i + 1:]
        absorbed = factors[:i] + [(None, phi_el, False)] + factors[i + 1:]
        return self.evaluate(tuple(centred)) + self.evaluate(tuple(absorbed))


def phi_sep(g: SeparatedGraph, a: Element, limit: int = DEFAULT_EXPECTATION_LIMIT,
            threads: int = 1) -> VertexFunction:
    """The canonical expectation of L(E, C) onto A0 for a finitely separated graph."""
    alg = algebra_for(g)
    a = alg.adopt(a)
    terms = a.sorted_terms()
    if threads > 1 and len(terms) > 1:
        def work(mc):
            return _FreeProductEvaluator(alg, limit).monomial(mc[0]).scale(mc[1])
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, terms))
    else:
        ev = _FreeProductEvaluator(alg, limit)
        parts = [ev.monomial(m).scale(c) for m, c in terms]
    total = VertexFunction()
    for p in parts:
        total = total + p
    return total
