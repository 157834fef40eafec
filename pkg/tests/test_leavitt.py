import random

import pytest

from randgen import random_element, random_graph, random_raw
from sepgraph.errors import ExprSyntaxError, StepLimitExceeded, UnknownSymbol
from sepgraph.graph import build_emn, build_hbk
from sepgraph.graphfile import parse_graph
from sepgraph.expr import parse_element
from sepgraph.leavitt import LeavittAlgebra, Letter, Monomial, parse_expr
from sepgraph.scalars import I, Scalar


@pytest.fixture(scope="module")
def e23():
    return LeavittAlgebra(build_emn(2, 3))


def _parse(alg, text):
    return parse_element(text, alg)


def nf(alg, text):
    return alg.format(_parse(alg, text))


# -- documented examples ----------------------------------------------------------------

def test_vertex_absorbs_edge(e23):
    assert e23.vertex("v") * e23.edge("a1") == e23.edge("a1")
    assert e23.edge("a1") * e23.vertex("w") == e23.edge("a1")
    assert (e23.vertex("w") * e23.edge("a1")).is_zero()


def test_ghost_real_different_sources_vanish():
    g = parse_graph("vertex u\nvertex x\nedge e u x\nedge f x u\nblock u P e\nblock x Q f\n")
    alg = LeavittAlgebra(g)
    assert (alg.ghost("e") * alg.edge("f")).is_zero()
    assert (alg.ghost("f") * alg.edge("e")).is_zero()
    # same source, same block, different edges
    h = LeavittAlgebra(build_hbk(2, 2, 2, 2))
    assert (h.ghost("a1") * h.edge("c1")).is_zero()


def test_same_block_distinct_edges(e23):
    assert (e23.ghost("a1") * e23.edge("a2")).is_zero()
    assert e23.ghost("a1") * e23.edge("a1") == e23.vertex("w")


def test_different_blocks_irreducible(e23):
    assert nf(e23, "b1^ a1") == "b1* a1"


def test_pivot_pairs(e23):
    assert nf(e23, "b1 b1^") == "b1 b1*"
    assert nf(e23, "b2 b2^") == "v - b1 b1*"
    assert nf(e23, "a3 a3^") == "v - a1 a1* - a2 a2*"
    assert e23.pivots == {"X": "a3", "Y": "b2"}


def test_cuntz_krieger_sums(e23):
    sx = sum((e23.word(a, a + "*") for a in ("a1", "a2", "a3")), e23.zero())
    sy = sum((e23.word(b, b + "*") for b in ("b1", "b2")), e23.zero())
    assert sx == e23.vertex("v") == sy


def test_triple_both_orders(e23):
    raw = e23.raw({Monomial("v", (Letter("a1"), Letter("a1", True), Letter("a1"))): 1})
    assert e23.normal_form(raw, "leftmost") == e23.edge("a1")
    assert e23.normal_form(raw, "rightmost") == e23.edge("a1")


def test_involution_examples(e23):
    a = _parse(e23, "i a1 b1^")
    assert e23.format(a.star()) == "-i b1 a1*"
    assert e23.vertex("v").star() == e23.vertex("v")


def test_add_and_scale(e23):
    a = _parse(e23, "a1 a1^ + (1/3) v")
    assert (a + (-1) * a).is_zero()
    assert e23.scale(0, a).is_zero()
    b = _parse(e23, "b1 - 2 a2 b1^")
    assert a + b == b + a


def test_parse_examples(e23):
    a = _parse(e23, "a1 a1^ + (1/3) v")
    assert {str(m) for m in a.terms} == {"a1 a1*", "v"}
    assert a.terms[Monomial("v")] == Scalar(1, 0) / 3
    assert _parse(e23, "a1^ a1") == e23.vertex("w")
    assert parse_expr("a1^ a1", e23.graph) == e23.vertex("w")
    assert _parse(e23, "a1 a1*") == _parse(e23, "a1 a1^")
    assert _parse(e23, "(2/3)i v") == e23.scale(Scalar(0, 2) / 3, e23.vertex("v"))
    with pytest.raises(ExprSyntaxError):
        _parse(e23, "a1 +")
    with pytest.raises(ExprSyntaxError):
        _parse(e23, "a1 $")
    with pytest.raises(UnknownSymbol):
        _parse(e23, "a9")


def test_bare_scalar_is_multiple_of_unit(e23):
    assert _parse(e23, "2") == _parse(e23, "2 v + 2 w")
    assert _parse(e23, "i i") == _parse(e23, "-1")


def test_scalar_text_roundtrip():
    rng = random.Random(0)
    for _ in range(200):
        s = Scalar(rng.randint(-9, 9), rng.randint(-9, 9)) / rng.randint(1, 9)
        assert Scalar.parse(str(s)) == s
    assert str(I) == "i" and str(-I) == "-i"


def test_step_limit():
    alg = LeavittAlgebra(build_emn(2, 3), step_limit=1)
    with pytest.raises(StepLimitExceeded):
        alg.normal_form(alg.raw({Monomial("v", (Letter("a3"), Letter("a3", True)) * 2): 1}))


def test_pivot_override_rejects_foreign_edge():
    with pytest.raises(UnknownSymbol):
        LeavittAlgebra(build_emn(2, 3), pivots={"X": "b1"})


# -- properties on random graphs -----------------------------------------------------------

def _random_algebras(seed, count, **kw):
    rng = random.Random(seed)
    for _ in range(count):
        yield rng, LeavittAlgebra(random_graph(rng, max_vertices=4, max_edges=6, allow_sinks=False, **kw))


def test_confluence_of_strategies():
    checked = 0
    for rng, alg in _random_algebras(100, 50):
        for _ in range(10):
            raw = random_raw(rng, alg, terms=3, max_len=6)
            assert alg.normal_form(raw, "leftmost") == alg.normal_form(raw, "rightmost")
            checked += 1
    assert checked == 500


def test_normal_form_idempotent():
    for rng, alg in _random_algebras(101, 30):
        for _ in range(10):
            a = alg.normal_form(random_raw(rng, alg, max_len=6))
            assert alg.normal_form(a) == a
            assert all(alg.is_normal(m) for m in a.terms)


def test_ring_axioms_and_involution():
    checked = 0
    for rng, alg in _random_algebras(102, 30):
        for _ in range(10):
            a, b, c = (random_element(rng, alg, terms=2, max_len=3) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c
            assert (a * b).star() == b.star() * a.star()
            assert a.star().star() == a
            assert (I * a).star() == a.star() * (-I)
            checked += 1
    assert checked == 300


def test_involution_commutes_with_normal_form():
    for rng, alg in _random_algebras(103, 20):
        for _ in range(10):
            raw = random_raw(rng, alg, max_len=5)
            flipped = {}
            for m, c in raw.terms.items():
                star = Monomial(alg.monomial_range(m),
                                tuple(Letter(l.edge, not l.ghost) for l in reversed(m.letters)))
                flipped[star] = flipped.get(star, 0) + c.conjugate()
            assert alg.normal_form(alg.raw(flipped)) == alg.normal_form(raw).star()


def test_trivially_separated_normal_forms_have_path_shape():
    for rng, alg in _random_algebras(104, 30, trivial=True):
        for _ in range(10):
            for m in random_element(rng, alg, max_len=6).terms:
                ghosts = [l.ghost for l in m.letters]
                assert ghosts == sorted(ghosts)


def test_vertices_independent():
    for _, alg in _random_algebras(105, 20):
        vs = [alg.vertex(v) for v in alg.graph.vertices]
        for i, x in enumerate(vs):
            for y in vs[i + 1:]:
                assert x != y and (x * y).is_zero()
            assert x * x == x
