"""The Leavitt path algebra L(E, C) over the Gaussian rationals.

Elements are finite sums of monomials: vertices, or composable words in
real letters ``e`` and ghost letters ``e*``.  Every element handed out by a
:class:`LeavittAlgebra` is in normal form with respect to these rules:

* ``e* f`` with e, f in the same block: ``r(e)`` when e == f, else 0;
* ``p p*`` for the pivot p of a block X at v: ``v - sum_{e in X, e != p} e e*``.

Non-composable products vanish, which takes care of the vertex relations
and of ``e* f`` for edges with different sources.  Ghost-real pairs from
different blocks at the same vertex are irreducible.  The pivot of a block is
its lexicographically last edge name unless overridden.

Rewriting terminates: ghost-real steps shorten a word, and a pivot step
keeps the length while replacing the pivot pair by non-pivot pairs, whose
only new redexes are length-reducing ghost-real pairs at the seams.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, NamedTuple

from .errors import StepLimitExceeded, UnknownSymbol
from .graph import SeparatedGraph
from .scalars import ONE, Scalar

DEFAULT_STEP_LIMIT = 10 ** 6
STRATEGIES = ("leftmost", "rightmost")


class Letter(NamedTuple):
    edge: str
    ghost: bool = False

    def __str__(self):
        return self.edge + ("*" if self.ghost else "")


@dataclass(frozen=True)
class Monomial:
    """A vertex (``letters == ()``) or a word; ``anchor`` is the source vertex."""

    anchor: str
    letters: tuple[Letter, ...] = ()

    @property
    def is_vertex(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.anchor if not self.letters else " ".join(map(str, self.letters))


class Element:
    """An immutable linear combination of monomials in a fixed algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "LeavittAlgebra", terms: Mapping[Monomial, Scalar]):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", MappingProxyType(
            {m: Scalar.coerce(c) for m, c in terms.items() if c}))

    def __setattr__(self, key, value):
        raise AttributeError("Element is immutable")

    def _lift(self, other):
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                other = self.algebra.adopt(other)
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        return self.algebra.add(self, self._lift(other))

    def __radd__(self, other):
        return self.algebra.add(self._lift(other), self)

    def __neg__(self):
        return self.algebra.scale(-1, self)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.multiply(self, other)
        return self.algebra.scale(other, self)

    def __rmul__(self, other):
        return self.algebra.scale(other, self)

    def star(self) -> "Element":
        return self.algebra.involution(self)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra.graph == other.algebra.graph and dict(self.terms) == dict(other.terms)
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return self.algebra.format(self)

    def __repr__(self):
        return f"Element({self.algebra.format(self)!r})"

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        key = self.algebra.monomial_key
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]))


class LeavittAlgebra:
    """L(E, C) for one separated graph, with memoised rewriting."""

    def __init__(self, graph: SeparatedGraph, step_limit: int = DEFAULT_STEP_LIMIT,
                 pivots: Mapping[str, str] | None = None):
        self.graph = graph
        self.step_limit = step_limit
        self.pivots = {b.name: max(b.edges) for b in graph.blocks}
        for block, edge in (pivots or {}).items():
            if edge not in graph.block(block).edges:
                raise UnknownSymbol(f"pivot {edge!r} is not an edge of block {block!r}")
            self.pivots[block] = edge
        self._pivot_edges = frozenset(self.pivots.values())
        self._cache = {s: {} for s in STRATEGIES}
        self._counter = threading.local()
        self._vertex_rank = {v: i for i, v in enumerate(graph.vertices)}
        self._edge_rank = {e.name: i for i, e in enumerate(graph.edges)}

    # -- letters ---------------------------------------------------------

    def letter_source(self, letter: Letter) -> str:
        e = self.graph.edge(letter.edge)
        return e.range if letter.ghost else e.source

    def letter_range(self, letter: Letter) -> str:
        e = self.graph.edge(letter.edge)
        return e.source if letter.ghost else e.range

    def letter_block(self, letter: Letter) -> str:
        return self.graph.block_of(letter.edge).name

    def monomial_range(self, m: Monomial) -> str:
        return m.anchor if m.is_vertex else self.letter_range(m.letters[-1])

    def monomial_key(self, m: Monomial):
        """Deterministic total order: length, then declaration order of symbols."""
        return (len(m.letters), [(self._edge_rank[l.edge], l.ghost) for l in m.letters],
                self._vertex_rank[m.anchor])

    # -- constructors ------------------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        """The unit, i.e. the sum of all vertices."""
        return Element(self, {Monomial(v): ONE for v in self.graph.vertices})

    def scalar(self, c) -> Element:
        return self.scale(c, self.one())

    def vertex(self, v: str) -> Element:
        if not self.graph.has_vertex(v):
            raise UnknownSymbol(f"unknown vertex {v!r}")
        return Element(self, {Monomial(v): ONE})

    def edge(self, e: str, ghost: bool = False) -> Element:
        if not self.graph.has_edge(e):
            raise UnknownSymbol(f"unknown edge {e!r}")
        letter = Letter(e, ghost)
        return Element(self, {Monomial(self.letter_source(letter), (letter,)): ONE})

    def ghost(self, e: str) -> Element:
        return self.edge(e, ghost=True)

    def word(self, *letters, coefficient=1) -> Element:
        """Product of letters given as ``"e"`` / ``"e*"`` strings or :class:`Letter` s."""
        out = self.one()
        for item in letters:
            if isinstance(item, str):
                item = Letter(item[:-1], True) if item.endswith("*") else Letter(item)
            out = out * self.edge(item.edge, item.ghost)
        return self.scale(coefficient, out)

    def raw(self, terms: Mapping[Monomial, object]) -> Element:
        """Wrap terms without normalising (symbols and composability are checked)."""
        for m in terms:
            self._check_monomial(m)
        return Element(self, terms)

    def _check_monomial(self, m: Monomial):
        if not self.graph.has_vertex(m.anchor):
            raise UnknownSymbol(f"unknown vertex {m.anchor!r}")
        here = m.anchor
        for letter in m.letters:
            if not self.graph.has_edge(letter.edge):
                raise UnknownSymbol(f"unknown edge {letter.edge!r}")
            if self.letter_source(letter) != here:
                raise ValueError(f"monomial {m} is not composable")
            here = self.letter_range(letter)

    def adopt(self, a: Element) -> Element:
        """Re-express an element of another algebra (same symbols) here."""
        if a.algebra is self:
            return a
        return self.normal_form(self.raw(dict(a.terms)))

    # -- rewriting -----------------------------------------------------------

    def _find_redex(self, letters, strategy):
        positions = range(len(letters) - 1)
        if strategy == "rightmost":
            positions = reversed(positions)
        for i in positions:
            a, b = letters[i], letters[i + 1]
            if a.ghost and not b.ghost:
                if self.graph.block_of(a.edge) is self.graph.block_of(b.edge):
                    return i
            elif not a.ghost and b.ghost and a.edge == b.edge and a.edge in self._pivot_edges:
                return i
        return None

    def _apply(self, m: Monomial, i: int):
        """One rewrite step at position i; returns a list of (monomial, int coefficient)."""
        letters = m.letters
        a, b = letters[i], letters[i + 1]
        prefix, suffix = letters[:i], letters[i + 2:]
        if a.ghost:
            if a.edge != b.edge:
                return []
            return [(Monomial(m.anchor if prefix else self.letter_range(b), prefix + suffix), 1)]
        v = self.graph.source(a.edge)
        block = self.graph.block_of(a.edge)
        rest = prefix + suffix
        out = [(Monomial(m.anchor if prefix else v, rest), 1)]
        for e in block.edges:
            if e != a.edge:
                out.append((Monomial(m.anchor if prefix else v, prefix + (Letter(e), Letter(e, True)) + suffix), -1))
        return out

    def _reduce(self, m: Monomial, strategy: str) -> dict:
        cache = self._cache[strategy]
        hit = cache.get(m)
        if hit is not None:
            return hit
        i = self._find_redex(m.letters, strategy)
        if i is None:
            result = {m: ONE}
        else:
            steps = self._counter.steps = getattr(self._counter, "steps", 0) + 1
            if steps > self.step_limit:
                raise StepLimitExceeded(f"rewriting exceeded {self.step_limit} rule applications")
            result = {}
            for sub, c in self._apply(m, i):
                for mono, coeff in self._reduce(sub, strategy).items():
                    total = result.get(mono, 0) + coeff * c
                    if total:
                        result[mono] = total
                    else:
                        result.pop(mono, None)
        cache[m] = result
        return result

    def normal_form(self, a: Element, strategy: str = "leftmost") -> Element:
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        if a.algebra is not self:
            for m in a.terms:
                self._check_monomial(m)
        out = {}
        for m, c in a.terms.items():
            self._counter.steps = 0
            for mono, coeff in self._reduce(m, strategy).items():
                out[mono] = out.get(mono, 0) + coeff * c
        return Element(self, out)

    def is_normal(self, m: Monomial) -> bool:
        return self._find_redex(m.letters, "leftmost") is None

    def clear_cache(self):
        for cache in self._cache.values():
            cache.clear()

    # -- arithmetic ------------------------------------------------------------

    def _concat(self, m1: Monomial, m2: Monomial):
        if self.monomial_range(m1) != m2.anchor:
            return None
        if m1.is_vertex:
            return m2
        if m2.is_vertex:
            return m1
        return Monomial(m1.anchor, m1.letters + m2.letters)

    def multiply(self, a: Element, b: Element, strategy: str = "leftmost") -> Element:
        a, b = self.adopt(a), self.adopt(b)
        out = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = self._concat(m1, m2)
                if m is None:
                    continue
                self._counter.steps = 0
                for mono, coeff in self._reduce(m, strategy).items():
                    out[mono] = out.get(mono, 0) + c1 * c2 * coeff
        return Element(self, out)

    def add(self, a: Element, b: Element) -> Element:
        a, b = self.adopt(a), self.adopt(b)
        out = dict(a.terms)
        for m, c in b.terms.items():
            out[m] = out.get(m, 0) + c
        return Element(self, out)

    def scale(self, c, a: Element) -> Element:
        c = Scalar.coerce(c)
        a = self.adopt(a)
        return Element(self, {m: c * x for m, x in a.terms.items()})

    def involution(self, a: Element) -> Element:
        a = self.adopt(a)
        flipped = {}
        for m, c in a.terms.items():
            star = Monomial(self.monomial_range(m),
                            tuple(Letter(l.edge, not l.ghost) for l in reversed(m.letters)))
            flipped[star] = flipped.get(star, 0) + c.conjugate()
        return self.normal_form(Element(self, flipped))

    # -- output ---------------------------------------------------------------

    def format(self, a: Element) -> str:
        terms = a.sorted_terms()
        if not terms:
            return "0"
        pieces = []
        for m, c in terms:
            negative = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
            mag = -c if negative else c
            if mag == 1:
                body = str(m)
            elif mag.im == 0 and mag.re.denominator == 1:
                body = f"{mag.re} {m}"
            elif mag.re == 0 and mag.im == 1:
                body = f"i {m}"
            else:
                body = f"({mag}) {m}"
            pieces.append((negative, body))
        first_neg, first = pieces[0]
        text = ("-" if first_neg else "") + first
        for neg, body in pieces[1:]:
            text += (" - " if neg else " + ") + body
        return text

    def to_json(self, a: Element) -> list:
        return [{"monomial": str(m), "coefficient": str(c)} for m, c in a.sorted_terms()]

    def metadata(self) -> dict:
        return {"pivots": dict(self.pivots), "block_order": [b.name for b in self.graph.blocks]}


# -- functional interface --------------------------------------------------------

_ALGEBRAS: dict = {}


def algebra_for(g: SeparatedGraph, step_limit: int = DEFAULT_STEP_LIMIT) -> LeavittAlgebra:
    """Shared algebra instance per (graph object, step limit)."""
    key = (id(g), step_limit)
    hit = _ALGEBRAS.get(key)
    if hit is None or hit.graph is not g:
        if len(_ALGEBRAS) > 64:
            _ALGEBRAS.clear()
        hit = _ALGEBRAS[key] = LeavittAlgebra(g, step_limit)
    return hit


def multiply(a: Element, b: Element, g: SeparatedGraph) -> Element:
    return algebra_for(g).multiply(a, b)


def normal_form(a: Element, g: SeparatedGraph, strategy: str = "leftmost") -> Element:
    alg = algebra_for(g)
    if a.algebra is not alg:
        a = alg.raw(dict(a.terms))
    return alg.normal_form(a, strategy)


def involution(a: Element) -> Element:
    return a.algebra.involution(a)


def add(a: Element, b: Element) -> Element:
    return a.algebra.add(a, b)


def scale(c, a: Element) -> Element:
    return a.algebra.scale(c, a)


def parse_expr(text: str, g: SeparatedGraph) -> Element:
    from .expr import parse_element

    return parse_element(text, algebra_for(g))
