import random

import pytest

from randgen import random_graph
from sepgraph.errors import ExprSyntaxError, UnknownVertex
from sepgraph.graph import build_emn, build_rose, validate
from sepgraph.intlin import groups_isomorphic
from sepgraph.ktheory import adjacency, k_theory
from sepgraph.monoid import (
    MonoidElement,
    Verdict,
    equal_bounded,
    grothendieck_group,
    group_image,
    neighbors,
    parse_monoid_element,
    relation_matrix,
    relations,
)

EDGELESS = validate({"vertices": ["v", "w"]})


def el(text, g=None):
    return parse_monoid_element(text, g)


def random_monoid_element(rng, g, max_count=3):
    return MonoidElement({v: rng.randint(0, max_count) for v in rng.sample(g.vertices, rng.randint(1, len(g.vertices)))})


def test_parse_and_format():
    x = el("a_v + 2 a_w + a_v")
    assert x.counts() == {"v": 2, "w": 2}
    assert x.format() == "2 a_v + 2 a_w"
    assert el("0") == MonoidElement() and not el("0")
    with pytest.raises(ExprSyntaxError):
        el("a_v +")
    with pytest.raises(ExprSyntaxError):
        el("-1 a_v")
    with pytest.raises(UnknownVertex):
        el("a_u", build_emn(2, 3))


def test_relations_examples():
    rels = relations(build_emn(2, 3))
    assert [(str(r.left), str(r.right)) for r in rels] == [("a_v", "3 a_w"), ("a_v", "2 a_w")]
    assert relations(EDGELESS) == []
    (loop,) = relations(build_rose(1))
    assert loop.left == loop.right == el("a_v")


def test_neighbors_examples():
    g = build_emn(2, 3)
    assert neighbors(g, el("a_v")) == {el("3 a_w"), el("2 a_w")}
    assert neighbors(g, MonoidElement()) == set()
    assert neighbors(g, el("a_w")) == set()
    assert neighbors(g, el("3 a_w")) == {el("a_v"), el("a_v + a_w")}


def test_equal_bounded_examples():
    g = build_emn(1, 2)
    assert equal_bounded(g, el("a_w"), el("2 a_w"), 4) is Verdict.YES
    assert equal_bounded(g, el("a_v"), el("a_v"), 0) is Verdict.YES
    assert equal_bounded(EDGELESS, el("a_v"), el("a_w"), 10) is Verdict.NO


def test_equal_bounded_unknown_when_bound_too_small():
    g = build_emn(1, 2)
    assert equal_bounded(g, el("a_w"), el("3 a_w"), 1) is Verdict.UNKNOWN


def test_equal_bounded_rejects_negative_bound():
    with pytest.raises(ValueError):
        equal_bounded(EDGELESS, el("a_v"), el("a_v"), -1)


def test_group_examples():
    assert grothendieck_group(build_emn(1, 2)).is_trivial()
    assert grothendieck_group(build_emn(2, 3)).is_trivial()
    G = grothendieck_group(build_emn(2, 2))
    assert (G.rank, G.invariant_factors) == (1, ())
    G = grothendieck_group(validate({"vertices": ["p", "q", "r"]}))
    assert (G.rank, G.invariant_factors) == (3, ())


def test_relation_matrix_is_the_k_theory_matrix():
    rng = random.Random(40)
    for _ in range(50):
        g = random_graph(rng)
        assert relation_matrix(g) == adjacency(g).matrix


def test_group_matches_k0():
    rng = random.Random(41)
    for _ in range(50):
        g = random_graph(rng)
        assert groups_isomorphic(grothendieck_group(g), k_theory(g).k0)


def test_symmetry_monotonicity_and_images():
    rng = random.Random(42)
    yes = 0
    for _ in range(60):
        g = random_graph(rng, max_vertices=4, max_edges=6)
        G = grothendieck_group(g)
        for _ in range(5):
            x, y = random_monoid_element(rng, g), random_monoid_element(rng, g)
            if rng.random() < 0.5:
                # walk from x so that many pairs are genuinely equal
                y = x
                for _ in range(rng.randint(1, 3)):
                    moves = sorted(neighbors(g, y), key=lambda m: m.format())
                    if moves:
                        y = rng.choice(moves)
            verdicts = [equal_bounded(g, x, y, d, 2000) for d in range(6)]
            assert verdicts == [equal_bounded(g, y, x, d, 2000) for d in range(6)]
            for small, large in zip(verdicts, verdicts[1:]):
                if small is Verdict.YES:
                    assert large is Verdict.YES
                if small is Verdict.NO:
                    assert large is Verdict.NO
            if Verdict.YES in verdicts:
                yes += 1
                assert group_image(G, x) == group_image(G, y)
    assert yes > 50
