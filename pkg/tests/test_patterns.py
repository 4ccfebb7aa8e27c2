import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypercover.constructions import ConstructionSpec, build
from hypercover.core import InvalidArgument, ThreeGraph, complete
from hypercover.patterns import (
    Pattern,
    covers_P2_center,
    covers_P3_position2,
    covers_Pk,
    covers_Sk,
    covers_Sk_center,
    covers_T,
    dump_pattern,
    find_rooted_embedding,
    generalized_triangle,
    has_F_covering,
    linear_path,
    load_pattern,
    resolve_pattern,
    star,
)

from conftest import random_graph, threegraphs

NAMES = ["T1", "T2", "T3", "P2c", "Skc:2", "Skc:3", "Sk:2", "Sk:3", "P2", "P3", "P3pos2", "Pk:4"]


def _valid_embedding(G, P, u, phi):
    assert phi[P.root] == u
    assert len(set(phi.values())) == P.m
    for e in P.edges:
        assert G.has_edge(*(phi[v] for v in e))


class TestPattern:
    def test_validation(self):
        with pytest.raises(InvalidArgument):
            Pattern(4, ((0, 1, 2),))  # vertex 3 in no edge
        with pytest.raises(InvalidArgument):
            Pattern(3, ((0, 1, 2), (2, 1, 0)))
        with pytest.raises(InvalidArgument):
            Pattern(3, ((0, 1, 2),), root=3)

    def test_root_orbits(self):
        assert generalized_triangle().root_orbits == (0, 2, 4)
        assert star(3).root_orbits == (0, 1)
        for k in range(2, 6):
            assert len(linear_path(k).root_orbits) == k

    def test_pattern_file_round_trip(self):
        P = linear_path(3, 2)
        Q = load_pattern(dump_pattern(P), "P3")
        assert (Q.m, Q.edges, Q.root) == (P.m, P.edges, P.root)

    def test_unknown_names(self):
        for bad in ("Q", "Pk:0", "Sk:x", "Skc:-1"):
            with pytest.raises(InvalidArgument):
                resolve_pattern(bad)


class TestEmbedding:
    def test_complete_five(self):
        P = generalized_triangle(4)
        phi = find_rooted_embedding(complete(5), P, 0)
        _valid_embedding(complete(5), P, 0, phi)

    def test_g2_apex_has_no_triangle(self):
        c = build(ConstructionSpec(2, k=4))
        for r in range(5):
            assert find_rooted_embedding(c.graph, generalized_triangle(r), c.apex) is None

    def test_g7_apex_has_no_p3(self):
        c = build(ConstructionSpec(7, 8))
        for r in range(7):
            assert find_rooted_embedding(c.graph, linear_path(3, r), c.apex) is None

    def test_too_few_vertices(self):
        assert find_rooted_embedding(complete(6), linear_path(3), 0) is None

    def test_out_of_range(self):
        with pytest.raises(InvalidArgument):
            find_rooted_embedding(complete(5), star(2), 5)

    def test_first_witness_is_deterministic(self):
        G = random_graph(random.Random(1), 9, 0.5)
        P = linear_path(3, 3)
        assert find_rooted_embedding(G, P, 2) == find_rooted_embedding(ThreeGraph(9, G.edges), P, 2)


class TestTriangle:
    def test_complete(self):
        for u in range(5):
            assert covers_T(complete(5), u).labels() == {"T", "T1", "T2", "T3"}

    def test_g2_apex(self):
        c = build(ConstructionSpec(2, k=4))
        assert not covers_T(c.graph, c.apex).any()

    def test_g3_apex(self):
        c = build(ConstructionSpec(3, 12))
        assert not covers_T(c.graph, c.apex).any()


class TestStarsAndPaths:
    def test_p2_center(self):
        c = build(ConstructionSpec(5, 7))
        assert not covers_P2_center(c.graph, c.apex)
        assert all(covers_P2_center(complete(5), u) for u in range(5))

    def test_p2_center_under_codegree_two_n5(self):
        for g in range(1 << 10):
            G = ThreeGraph(5, g)
            if G.m and min(G.codegree(a, b) for a, b in combinations(range(5), 2)) >= 2:
                assert all(covers_P2_center(G, u) for u in range(5))

    def test_s3_center(self):
        c = build(ConstructionSpec(6, 9))
        assert not covers_Sk_center(c.graph, c.apex, 3)
        assert all(covers_Sk_center(complete(7), u, 3) for u in range(7))

    def test_s3_any_position(self):
        assert all(covers_Sk(complete(7), u, 3) for u in range(7))
        c = build(ConstructionSpec(6, 9))
        spec = resolve_pattern("Sk:3")
        assert covers_Sk(c.graph, c.apex, 3) == spec.oracle(c.graph, c.apex)

    def test_paths(self):
        c = build(ConstructionSpec(7, 8))
        assert not covers_Pk(c.graph, c.apex, 3)
        assert all(covers_Pk(complete(9), u, 4) for u in range(9))

    def test_g8_has_no_p4(self):
        # claimed for G8; the edge rule admits paths through A, so this fails
        c = build(ConstructionSpec(8, 13, 4))
        assert not any(covers_Pk(c.graph, v, 4) for v in range(13))

    def test_p3_position_two(self):
        assert all(covers_P3_position2(complete(8), u) for u in range(8))
        c = build(ConstructionSpec(7, 8))
        assert not covers_P3_position2(c.graph, c.apex)
        assert not resolve_pattern("P3pos2").oracle(c.graph, c.apex)


class TestCoverReport:
    def test_g4_p2(self):
        # at n = 8 the other side is a K4 too, so it is uncovered as well
        c = build(ConstructionSpec(4, 8))
        assert set(c.side_a) <= set(has_F_covering(c.graph, "P2").uncovered)
        c = build(ConstructionSpec(4, 9))
        assert has_F_covering(c.graph, "P2").uncovered == list(c.side_a)

    def test_complete_t(self):
        r = has_F_covering(complete(5), "T")
        assert r.covering and r.uncovered == []
        assert r.to_dict()["labels"]["0"] == ["T", "T1", "T2", "T3"]

    def test_g1_t(self):
        c = build(ConstructionSpec(1, 7))
        assert c.apex in has_F_covering(c.graph, "T").uncovered

    def test_custom_pattern(self):
        F = Pattern(4, ((0, 1, 2), (0, 1, 3)), root=2, name="pair")
        r = has_F_covering(complete(4), F, [0, 3])
        assert r.covering and r.pattern == "pair"

    def test_vertex_range(self):
        with pytest.raises(InvalidArgument):
            has_F_covering(complete(5), "T", [7])


def test_oracle_equivalence_all_graphs_n5():
    for name in NAMES:
        spec = resolve_pattern(name)
        for g in range(1 << 10):
            G = ThreeGraph(5, g)
            for u in range(5):
                assert spec.covers(G, u) == spec.oracle(G, u), (name, g, u)


def test_oracle_equivalence_random():
    rng = random.Random(99)
    specs = [resolve_pattern(n) for n in NAMES]
    for j in range(600):
        G = random_graph(rng, 6 + j % 4, rng.choice((0.15, 0.3, 0.5, 0.7)))
        for spec in specs:
            for u in range(G.n):
                assert spec.covers(G, u) == spec.oracle(G, u)


def test_t_positions_match_rooted_oracle():
    rng = random.Random(3)
    T = generalized_triangle()
    for _ in range(300):
        G = random_graph(rng, rng.randint(5, 8), 0.35)
        for u in range(G.n):
            p = covers_T(G, u)
            assert p.t1 == (find_rooted_embedding(G, T.rooted(4), u) is not None)
            assert p.t2 == (find_rooted_embedding(G, T.rooted(2), u) is not None)
            assert p.t3 == (find_rooted_embedding(G, T.rooted(0), u) is not None)


@given(threegraphs(min_n=5, max_n=8), st.data())
def test_covering_is_monotone(G, data):
    t = data.draw(st.integers(0, (G.n * (G.n - 1) * (G.n - 2)) // 6 - 1))
    H = ThreeGraph(G.n, G.edges | 1 << t)
    for name in NAMES:
        spec = resolve_pattern(name)
        for u in range(G.n):
            if spec.covers(G, u):
                assert spec.covers(H, u)


@given(threegraphs(min_n=5, max_n=8))
def test_no_flags_means_no_triangle_at_vertex(G):
    T = generalized_triangle()
    for u in range(G.n):
        some = covers_T(G, u).any()
        anywhere = any(find_rooted_embedding(G, T.rooted(r), u) is not None for r in range(5))
        assert some == anywhere
