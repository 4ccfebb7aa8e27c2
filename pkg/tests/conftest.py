import os
import random
from math import comb

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hypercover.core import ThreeGraph, TwoGraph

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def threegraphs(draw, min_n=3, max_n=9):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << comb(n, 3)) - 1))
    return ThreeGraph(n, bits)


@st.composite
def twographs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return TwoGraph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


def random_graph(rng: random.Random, n: int, density: float) -> ThreeGraph:
    bits = 0
    for t in range(comb(n, 3)):
        if rng.random() < density:
            bits |= 1 << t
    return ThreeGraph(n, bits)


def random_two_graph(rng: random.Random, n: int, density: float) -> TwoGraph:
    return TwoGraph.from_edges(
        n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
    )


def slow(fn):
    skip = pytest.mark.skipif(
        os.environ.get("HYPERCOVER_SLOW") != "1", reason="set HYPERCOVER_SLOW=1 for long passes"
    )
    return pytest.mark.slow(skip(fn))
