import itertools
import random

import pytest

from randgen import random_graph
from sepgraph.errors import TooLarge, UnknownVertex
from sepgraph.graph import build_emn, build_hbk, build_rose, trivially_separate, validate
from sepgraph.hereditary import (
    closure,
    enumerate_lattice,
    is_c_saturated,
    is_hereditary,
    is_saturated,
    reachable,
)


def brute_force_lattice(g):
    """Filter every vertex subset directly against the two defining conditions."""
    out = []
    vertices = list(g.vertices)
    for r in range(len(vertices) + 1):
        for combo in itertools.combinations(vertices, r):
            H = set(combo)
            hereditary = all(e.range in H for e in g.edges if e.source in H)
            saturated = not any(
                b.vertex not in H and all(g.range(e) in H for e in b.edges) for b in g.blocks)
            if hereditary and saturated:
                out.append(frozenset(H))
    return set(out)


def test_is_hereditary_examples():
    g = build_emn(2, 3)
    assert is_hereditary(g, {"w"})
    assert not is_hereditary(g, {"v"})
    assert is_hereditary(g, g.vertices)
    with pytest.raises(UnknownVertex):
        is_hereditary(g, {"u"})


def test_is_c_saturated_examples():
    hbk = build_hbk(2, 2, 2, 2)
    assert is_c_saturated(hbk, {"w1"}) and is_c_saturated(hbk, {"w2"})
    assert not is_c_saturated(build_emn(2, 3), {"w"})
    rng = random.Random(30)
    for _ in range(30):
        assert is_c_saturated(random_graph(rng), set())


def test_pair_of_sinks_is_not_c_saturated():
    # block X at v ranges over {w1, w2}, so any set holding both sinks must hold v
    hbk = build_hbk(2, 2, 2, 2)
    assert is_hereditary(hbk, {"w1", "w2"})
    assert not is_c_saturated(hbk, {"w1", "w2"})
    assert closure(hbk, {"w1", "w2"}) == {"v", "w1", "w2"}


def test_closure_examples():
    assert closure(build_emn(2, 3), {"v"}) == {"v", "w"}
    assert closure(build_hbk(2, 2, 2, 2), {"w1"}) == {"w1"}
    assert closure(build_emn(2, 3), set()) == frozenset()


def test_lattice_examples():
    lat = enumerate_lattice(build_emn(2, 3))
    assert list(lat.members) == [frozenset(), frozenset({"v", "w"})]
    hbk = build_hbk(2, 2, 2, 2)
    lat = enumerate_lattice(hbk)
    assert set(lat.members) == brute_force_lattice(hbk)
    assert {frozenset({"w1"}), frozenset({"w2"})} <= set(lat.members)
    assert len(lat) == 4
    edgeless = validate({"vertices": ["p", "q"]})
    assert len(enumerate_lattice(edgeless)) == 4


def test_lattice_matches_brute_force():
    rng = random.Random(31)
    for _ in range(150):
        g = random_graph(rng, max_vertices=7, max_edges=10)
        assert set(enumerate_lattice(g).members) == brute_force_lattice(g)


def test_lattice_order_and_tables():
    rng = random.Random(32)
    for _ in range(40):
        g = random_graph(rng, max_vertices=6, max_edges=9)
        lat = enumerate_lattice(g)
        assert lat.members[0] == frozenset() and lat.members[-1] == frozenset(g.vertices)
        sizes = [len(H) for H in lat.members]
        assert sizes == sorted(sizes)
        for i, a in enumerate(lat.members):
            for j, b in enumerate(lat.members):
                assert lat.members[lat.meet[i][j]] == a & b
                assert lat.members[lat.join[i][j]] == closure(g, a | b)


def test_closure_properties():
    rng = random.Random(33)
    for _ in range(100):
        g = random_graph(rng, max_vertices=6, max_edges=9)
        S = {v for v in g.vertices if rng.random() < 0.3}
        T = S | {v for v in g.vertices if rng.random() < 0.3}
        H = closure(g, S)
        assert S <= H
        assert closure(g, H) == H
        assert H <= closure(g, T)
        assert is_hereditary(g, H) and is_c_saturated(g, H)


def test_reachable_includes_start():
    g = build_emn(2, 3)
    assert reachable(g, {"v"}) == {"v", "w"}


def test_is_saturated_on_trivial_graphs():
    g = trivially_separate(build_hbk(2, 2, 2, 2))
    assert is_saturated(g, {"v", "w1", "w2"})
    assert not is_saturated(g, {"w1", "w2"})
    assert is_saturated(build_rose(2), set())


def test_lattice_size_guard():
    g = validate({"vertices": [f"v{i}" for i in range(21)]})
    with pytest.raises(TooLarge):
        enumerate_lattice(g)
