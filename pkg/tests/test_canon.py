import random
from itertools import permutations
from math import comb, factorial

from hypothesis import given
from hypothesis import strategies as st

from hypercover.canon import (
    automorphism_generators,
    canonical_form,
    canonical_labelling,
    group_order,
    is_isomorphic,
    triple_orbits,
    vertex_orbits,
)
from hypercover.constructions import ConstructionSpec, build
from hypercover.core import ThreeGraph, _rank, complete, triples

from conftest import random_graph, threegraphs


def _perm_tables(n):
    tri = triples(n)
    out = []
    for p in permutations(range(n)):
        out.append([_rank(*sorted((p[a], p[b], p[c]))) for a, b, c in tri])
    return out


def _brute_canon(G, tables):
    best = -1
    for table in tables:
        bits = 0
        for t in range(len(table)):
            if G.edges >> t & 1:
                bits |= 1 << table[t]
        best = max(best, bits)
    return best


def test_relabelled_copy_is_isomorphic():
    rng = random.Random(5)
    for _ in range(50):
        G = random_graph(rng, rng.randint(5, 10), 0.4)
        perm = list(range(G.n))
        rng.shuffle(perm)
        assert is_isomorphic(G, G.relabel(perm))
        assert canonical_form(G) == canonical_form(G.relabel(perm))


def test_g1_and_g5_are_isomorphic():
    # G5's edges all contain v0, and its link there is complete: the same star as G1
    G1 = build(ConstructionSpec(1, 6)).graph
    G5 = build(ConstructionSpec(5, 6)).graph
    assert G1.m == G5.m == 10
    assert is_isomorphic(G1, G5)


def test_complete_minus_one_edge():
    K = complete(5)
    assert is_isomorphic(K.without_edges((0, 1, 2)), K.without_edges((2, 3, 4)))


def test_different_sizes():
    assert not is_isomorphic(complete(5), complete(6))
    assert not is_isomorphic(ThreeGraph(5, 1), ThreeGraph(5, 3))


def test_partition_matches_brute_force_n5():
    """All 1024 labelled graphs: same canonical form iff same brute-force class,
    which settles every one of the ~10^6 pairs."""
    tables = _perm_tables(5)
    canon_classes = {}
    brute_classes = {}
    for g in range(1 << 10):
        G = ThreeGraph(5, g)
        canon_classes.setdefault(canonical_form(G).edges, set()).add(g)
        brute_classes.setdefault(_brute_canon(G, tables), set()).add(g)
    assert len(canon_classes) == len(brute_classes) == 34
    assert sorted(map(sorted, canon_classes.values())) == sorted(map(sorted, brute_classes.values()))


def test_random_pairs_n6_match_brute_force():
    tables = _perm_tables(6)
    rng = random.Random(11)
    agree = 0
    for _ in range(300):
        G = random_graph(rng, 6, rng.choice((0.3, 0.5, 0.7)))
        if rng.random() < 0.5:
            perm = list(range(6))
            rng.shuffle(perm)
            H = G.relabel(perm)
            if rng.random() < 0.5:
                H = ThreeGraph(6, H.edges ^ (1 << rng.randrange(20)))
        else:
            H = random_graph(rng, 6, 0.5)
        want = G.m == H.m and _brute_canon(G, tables) == _brute_canon(H, tables)
        agree += is_isomorphic(G, H) == want
    assert agree == 300


def test_orbit_stabilizer_sums_to_all_labelled_graphs():
    for n in (4, 5):
        seen = {}
        for g in range(1 << comb(n, 3)):
            G = ThreeGraph(n, g)
            form = canonical_form(G).edges
            if form not in seen:
                seen[form] = group_order(n, automorphism_generators(G))
        assert sum(factorial(n) // a for a in seen.values()) == 1 << comb(n, 3)


def test_group_orders():
    assert group_order(6, automorphism_generators(complete(6))) == 720
    assert group_order(5, automorphism_generators(ThreeGraph(5))) == 120
    G2 = build(ConstructionSpec(2, k=4)).graph
    gens = automorphism_generators(G2)
    for g in gens:
        assert G2.relabel(g) == G2


def test_vertex_and_triple_orbits():
    G = ThreeGraph.from_edges(5, [(0, 1, 2), (0, 1, 3), (2, 3, 4)])
    orb = vertex_orbits(G)
    assert orb == [0, 0, 2, 2, 4]
    tro = triple_orbits(5, automorphism_generators(G))
    assert tro[_rank(0, 1, 2)] == tro[_rank(0, 1, 3)]


def test_labelling_is_consistent():
    rng = random.Random(2)
    G = random_graph(rng, 9, 0.5)
    lab = canonical_labelling(G)
    assert G.relabel(lab.perm) == lab.form


@given(threegraphs(max_n=9))
def test_canonical_form_idempotent(G):
    C = canonical_form(G)
    assert canonical_form(C) == C
    assert C.m == G.m


@given(threegraphs(max_n=9), st.randoms(use_true_random=False))
def test_canonical_form_invariant(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    assert canonical_form(G.relabel(perm)) == canonical_form(G)
