from itertools import combinations
from math import ceil, comb

import pytest

from hypercover.constructions import (
    OBSERVATIONS,
    ConstructionSpec,
    build,
    construction_from_name,
    verify_observation,
)
from hypercover.core import InvalidArgument, loads, min_degree
from hypercover.patterns import covers_Pk, covers_T, has_F_covering

# cluster-triple edges listed for C_a={v1,v2,v3}, C_b={v4,v5,v6}, C_c={v7,v8,v9}
LISTED = [
    (1, 4, 7), (2, 4, 8), (3, 4, 9),
    (1, 5, 8), (2, 5, 9), (3, 5, 7),
    (1, 6, 9), (2, 6, 7), (3, 6, 8),
]


class TestBuild:
    def test_g2_edge_count(self):
        c = build(ConstructionSpec(2, k=4))
        assert c.graph.n == 13
        assert c.graph.m == 4 * 4 + comb(4, 3) * 9 == 52

    def test_g4_edge_count(self):
        assert build(ConstructionSpec(4, 8)).graph.m == 8

    def test_g9_vertex_degree(self):
        assert min_degree(build(ConstructionSpec(9, 12, 3)).graph, 1) == 10

    def test_g2_listed_edges(self):
        c = build(ConstructionSpec(2, k=4))
        C1, C2, C3 = c.parts["C1"], c.parts["C2"], c.parts["C3"]
        v = {i + 1: x for i, x in enumerate(C1 + C2 + C3)}
        got = {e for e in c.graph.edge_list() if all(len(set(e) & set(C)) == 1 for C in (C1, C2, C3))}
        assert got == {tuple(sorted(v[i] for i in e)) for e in LISTED}

    def test_deterministic(self):
        for spec in (ConstructionSpec(2, k=5), ConstructionSpec(3, 11), ConstructionSpec(8, 11, 5)):
            assert build(spec).graph.edges == build(spec).graph.edges

    @pytest.mark.parametrize(
        "spec",
        [
            ConstructionSpec(2, k=3),
            ConstructionSpec(3, 8),
            ConstructionSpec(4, 7),
            ConstructionSpec(8, 8, 4),
            ConstructionSpec(8, 9, 3),
            ConstructionSpec(9, 11, 3),
            ConstructionSpec(10, 10),
        ],
    )
    def test_out_of_range(self, spec):
        with pytest.raises(InvalidArgument):
            build(spec)

    def test_text_carries_apex(self):
        c = construction_from_name("g7", n=8)
        text = c.dumps()
        assert "c apex 0" in text
        assert loads(text) == c.graph

    def test_text_carries_side(self):
        text = construction_from_name("g9", n=12, k=3).dumps()
        assert "c side-A 0 1 2 3 4 5" in text


@pytest.mark.parametrize("k", [4, 5, 6])
def test_g2_codegrees(k):
    c = build(ConstructionSpec(2, k=k))
    G = c.graph
    cluster_of = {v: name for name, C in c.parts.items() for v in C}
    for a, b in combinations(range(1, G.n), 2):
        want = 2 if cluster_of[a] == cluster_of[b] else k - 2
        assert G.codegree(a, b) == want
    for v in range(1, G.n):
        assert G.codegree(0, v) == 2


@pytest.mark.parametrize("n", range(9, 16))
def test_g3_degree_floor_and_apex(n):
    # the floor is violated for some n; see the notes on this construction
    c = build(ConstructionSpec(3, n))
    assert not covers_T(c.graph, c.apex).any()
    assert min_degree(c.graph, 1) >= ceil(n * n / 9)


@pytest.mark.parametrize("k, n", [(k, n) for k in (4, 5, 6) for n in range(2 * k + 1, 2 * k + 5)])
def test_g8_has_no_path(k, n):
    # claimed; the edge rule as stated admits paths, so these fail
    G = build(ConstructionSpec(8, n, k)).graph
    assert not any(covers_Pk(G, v, k) for v in range(n))


def test_g8_explicit_path():
    # a P4 through A in G8(k=4, n=9), by hand
    c = build(ConstructionSpec(8, 9, 4))
    path = [(5, 6, 0), (0, 3, 2), (2, 4, 1), (1, 7, 8)]
    assert set(c.side_a) == {0, 1}
    assert all(c.graph.has_edge(*e) for e in path)
    assert len({v for e in path for v in e}) == 9


@pytest.mark.parametrize("n", [12, 13, 14])
def test_g9_side_is_uncovered(n):
    c = build(ConstructionSpec(9, n, 3))
    assert set(c.side_a) <= set(has_F_covering(c.graph, "P3").uncovered)


class TestObservations:
    def test_g2_claims(self):
        r = verify_observation("2.2", k=4)
        assert r.passed
        assert [ch.computed for ch in r.checks] == [2, (False, False, False)]

    def test_g3_degree_floor_n12(self):
        r = verify_observation("2.4", n=12)
        assert r.checks[0].expected == 16
        assert r.checks[0].computed >= 16 and r.passed

    def test_g7_claims_n10(self):
        r = verify_observation("3.6", n=10)
        assert [ch.computed for ch in r.checks] == [1, 8, False]
        assert r.passed

    def test_g8_codegree_is_flagged(self):
        r = verify_observation("3.7", k=5, n=11)
        flagged = [ch for ch in r.checks if ch.flagged]
        assert [ch.computed for ch in flagged] == [3, 3]
        assert all(ch.passed is None for ch in flagged)

    @pytest.mark.parametrize(
        "obs, params",
        [("2.1", {"n": 7}), ("3.1", {"n": 8}), ("3.2", {"n": 7}), ("3.3", {"n": 9}), ("3.9", {"k": 3, "n": 12})],
    )
    def test_others_pass(self, obs, params):
        assert verify_observation(obs, **params).passed

    def test_report_json(self):
        d = verify_observation("2.1", n=6).to_dict()
        assert d["pass"] is True and d["params"] == {"n": 6}

    def test_unknown(self):
        with pytest.raises(InvalidArgument):
            verify_observation("9.9", n=5)
        with pytest.raises(InvalidArgument):
            verify_observation("3.7", n=11)

    def test_registry(self):
        assert sorted(OBSERVATIONS) == ["2.1", "2.2", "2.4", "3.1", "3.2", "3.3", "3.6", "3.7", "3.9"]
