"""Seeded generators for random graphs and algebra elements used across tests."""

from __future__ import annotations

import random
from fractions import Fraction

from sepgraph.graph import Block, Edge, SeparatedGraph
from sepgraph.expectation import center
from sepgraph.leavitt import LeavittAlgebra, Letter, Monomial, algebra_for
from sepgraph.scalars import Scalar

COEFFS = [Scalar(1), Scalar(-1), Scalar(2), Scalar(Fraction(1, 2)), Scalar(0, 1),
          Scalar(1, -1), Scalar(Fraction(-2, 3), Fraction(1, 3))]


def random_graph(rng: random.Random, max_vertices=5, max_edges=8, trivial=False,
                 allow_sinks=True) -> SeparatedGraph:
    nv = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(nv)]
    ne = rng.randint(0 if allow_sinks else nv, max(max_edges, 0 if allow_sinks else nv))
    edges = []
    if not allow_sinks:
        edges = [Edge(f"e{i}", v, rng.choice(vertices)) for i, v in enumerate(vertices)]
    while len(edges) < ne:
        edges.append(Edge(f"e{len(edges)}", rng.choice(vertices), rng.choice(vertices)))
    blocks = []
    for v in vertices:
        out = [e.name for e in edges if e.source == v]
        if not out:
            continue
        k = 1 if trivial else rng.randint(1, len(out))
        rng.shuffle(out)
        cuts = sorted(rng.sample(range(1, len(out)), k - 1)) if k > 1 else []
        parts = [out[i:j] for i, j in zip([0] + cuts, cuts + [len(out)])]
        for j, part in enumerate(parts):
            blocks.append(Block(f"X{v}_{j}", v, tuple(sorted(part))))
    return SeparatedGraph(vertices, edges, blocks)


def random_monomial(rng: random.Random, alg: LeavittAlgebra, max_len=4) -> Monomial:
    """A composable word, usually not in normal form."""
    g = alg.graph
    start = rng.choice(g.vertices)
    letters = []
    here = start
    for _ in range(rng.randint(0, max_len)):
        options = [Letter(e.name, False) for e in g.edges if e.source == here]
        options += [Letter(e.name, True) for e in g.edges if e.range == here]
        if not options:
            break
        letter = rng.choice(options)
        letters.append(letter)
        here = alg.letter_range(letter)
    return Monomial(start, tuple(letters))


def random_raw(rng: random.Random, alg: LeavittAlgebra, terms=3, max_len=4):
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = random_monomial(rng, alg, max_len)
        out[m] = out.get(m, 0) + rng.choice(COEFFS)
    return alg.raw(out)


def random_element(rng: random.Random, alg: LeavittAlgebra, terms=3, max_len=4):
    return alg.normal_form(random_raw(rng, alg, terms, max_len))


def random_nonzero_element(rng: random.Random, alg: LeavittAlgebra, terms=3, max_len=4):
    while True:
        a = random_element(rng, alg, terms, max_len)
        if not a.is_zero():
            return a


def random_path(rng: random.Random, g: SeparatedGraph, start: str, length: int):
    """Real edges only; may stop early at a sink."""
    path = []
    here = start
    for _ in range(length):
        out = g.out_edges(here)
        if not out:
            break
        e = rng.choice(out)
        path.append(e)
        here = g.range(e)
    return path


def alternating_product(rng, g, blocks, length):
    """Product of centred single-block factors with adjacent blocks distinct.

    Each factor starts where the previous one ends, so most products are nonzero.
    """
    alg = algebra_for(g)
    names = [b.name for b in blocks]
    seq = [rng.choice(names)]
    while len(seq) < length:
        seq.append(rng.choice([n for n in names if n != seq[-1]]))
    product = alg.one()
    here = g.block(seq[0]).vertex
    for name in seq:
        for _ in range(20):  # resample factors that centre to zero
            m, end = random_block_element(rng, g, name, here)
            _, factor = center(g, name, m)
            if not factor.element.is_zero():
                break
        here = end
        product = product * factor.element
    return product


def random_block_element(rng, g, name, start, max_len=4):
    """Random combination of words in the letters of one block, all running start -> end."""
    alg = algebra_for(g)
    block = g.block(name)
    paths = []
    for _ in range(rng.randint(1, 3)):
        here = start
        letters = []
        for _ in range(rng.randint(1, max_len)):
            opts = [Letter(e) for e in block.edges if g.source(e) == here]
            opts += [Letter(e, True) for e in block.edges if g.range(e) == here]
            if not opts:
                break
            letters.append(rng.choice(opts))
            here = alg.letter_range(letters[-1])
        paths.append((tuple(letters), here))
    end = paths[0][1]
    out = alg.zero()
    for letters, stop in paths:
        if stop != end:
            continue
        coeff = Scalar(rng.randint(-3, 3), rng.randint(-2, 2)) or Scalar(1)
        out = out + alg.normal_form(alg.raw({Monomial(start, letters): coeff}))
    return out, end
