"""Extremal constructions G1..G9 and a checker for their stated properties.

Vertex layout is fixed: the apex ``u`` (when there is one) is vertex 0 and the
remaining named vertices follow in construction order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import ceil, comb
from typing import Any

from .core import InvalidArgument, ThreeGraph, dumps, min_degree, _rank
from .patterns import covers_P2_center, covers_Pk, covers_Sk_center, covers_T, has_F_covering

__all__ = [
    "ConstructionSpec",
    "Construction",
    "build",
    "construction_from_name",
    "Check",
    "ObservationReport",
    "verify_observation",
    "OBSERVATIONS",
]


@dataclass(frozen=True)
class ConstructionSpec:
    id: int
    n: int | None = None
    k: int | None = None


@dataclass(frozen=True)
class Construction:
    spec: ConstructionSpec
    graph: ThreeGraph
    apex: int | None = None
    side_a: tuple[int, ...] = ()
    parts: dict[str, tuple[int, ...]] = field(default_factory=dict, compare=False)

    @property
    def name(self) -> str:
        return f"g{self.spec.id}"

    def comments(self) -> list[str]:
        out = [f"construction {self.name} " + " ".join(f"{k}={v}" for k, v in self._params().items())]
        if self.apex is not None:
            out.append(f"apex {self.apex}")
        if self.side_a:
            out.append("side-A " + " ".join(map(str, self.side_a)))
        return out

    def _params(self) -> dict[str, int]:
        p = {"n": self.graph.n}
        if self.spec.k is not None:
            p["k"] = self.spec.k
        return p

    def dumps(self) -> str:
        return dumps(self.graph, self.comments())


def _from_triples(n, tris) -> ThreeGraph:
    bits = 0
    for t in tris:
        a, b, c = sorted(t)
        bits |= 1 << _rank(a, b, c)
    return ThreeGraph(n, bits)


def _need(cond: bool, msg: str):
    if not cond:
        raise InvalidArgument(msg)


def _g1(n):
    # every triple through the apex
    _need(n is not None and n >= 3, "g1 needs n >= 3")
    return _from_triples(n, ((0, a, b) for a, b in combinations(range(1, n), 2))), 0, (), {}


def _g2(k):
    _need(k is not None and k >= 4, "g2 needs k >= 4")
    n = 3 * k + 1
    clusters = [tuple(range(1 + 3 * i, 4 + 3 * i)) for i in range(k)]
    tris = []
    for C in clusters:
        tris.extend(combinations((0,) + C, 3))
    for A, B, C in combinations(clusters, 3):
        for i in range(3):
            for j in range(3):
                # labels 1..3: l = i + j - 1 (mod 3)
                l = (i + j) % 3
                tris.append((A[i], B[j], C[l]))
    parts = {f"C{i + 1}": C for i, C in enumerate(clusters)}
    return _from_triples(n, tris), 0, (), parts


def _g3(n):
    _need(n is not None and n >= 9, "g3 needs n >= 9")
    a = ceil(n / 3)
    A1 = tuple(range(1, 1 + a))
    A2 = tuple(range(1 + a, 1 + 2 * a))
    B = tuple(range(1 + 2 * a, n))
    tris = [(0, x, y) for x in A1 for y in A2]
    tris += [(x, y, z) for x in A1 for y in A2 for z in B]
    tris += list(combinations(B, 3))
    return _from_triples(n, tris), 0, (), {"A1": A1, "A2": A2, "B": B}


def _g4(n):
    _need(n is not None and n >= 8, "g4 needs n >= 8")
    A, B = tuple(range(4)), tuple(range(4, n))
    tris = list(combinations(A, 3)) + list(combinations(B, 3))
    return _from_triples(n, tris), None, A, {"A": A, "B": B}


def _g5(n):
    _need(n is not None and n >= 4, "g5 needs n >= 4")
    rest = range(2, n)
    tris = [(0, 1, x) for x in rest] + [(1, x, y) for x, y in combinations(rest, 2)]
    return _from_triples(n, tris), 0, (), {"v0": (1,), "V'": tuple(rest)}


def _g6(n):
    _need(n is not None and n >= 5, "g6 needs n >= 5")
    rest = range(3, n)
    tris = [(0, 1, 2)] + [(0, 1, x) for x in rest] + [(0, 2, x) for x in rest]
    tris += list(combinations(range(1, n), 3))
    return _from_triples(n, tris), 0, (), {"a": (1,), "b": (2,), "V'": tuple(rest)}


def _g7(n):
    _need(n is not None and n >= 3, "g7 needs n >= 3")
    return _from_triples(n, ((0, a, b) for a, b in combinations(range(1, n), 2))), 0, (), {}


def _g8(k, n):
    _need(k is not None and k >= 4, "g8 needs k >= 4")
    _need(n is not None and n >= 2 * k + 1, "g8 needs n >= 2k+1")
    A = tuple(range(k - 2))
    side = set(A)
    tris = [t for t in combinations(range(n), 3) if 0 < sum(v in side for v in t) < 3]
    return _from_triples(n, tris), None, A, {"A": A, "B": tuple(range(k - 2, n))}


def _g9(k, n):
    _need(k is not None and k >= 3, "g9 needs k >= 3")
    _need(n is not None and n >= 4 * k, "g9 needs n >= 4k")
    A, B = tuple(range(2 * k)), tuple(range(2 * k, n))
    tris = list(combinations(A, 3)) + list(combinations(B, 3))
    return _from_triples(n, tris), None, A, {"A": A, "B": B}


def build(spec: ConstructionSpec) -> Construction:
    i, n, k = spec.id, spec.n, spec.k
    if i == 2:
        if n is not None and k is not None and n != 3 * k + 1:
            raise InvalidArgument("g2 has n = 3k+1")
        if k is None and n is not None and (n - 1) % 3 == 0:
            k = (n - 1) // 3
            spec = ConstructionSpec(2, None, k)
        G, apex, side, parts = _g2(k)
    elif i in (8, 9):
        G, apex, side, parts = (_g8 if i == 8 else _g9)(k, n)
    elif i in (1, 3, 4, 5, 6, 7):
        G, apex, side, parts = {1: _g1, 3: _g3, 4: _g4, 5: _g5, 6: _g6, 7: _g7}[i](n)
    else:
        raise InvalidArgument(f"no construction {i}")
    return Construction(spec, G, apex, side, parts)


def construction_from_name(name: str, n: int | None = None, k: int | None = None) -> Construction:
    if len(name) != 2 or name[0] != "g" or not name[1].isdigit():
        raise InvalidArgument(f"unknown construction {name!r}")
    return build(ConstructionSpec(int(name[1]), n, k))


# ---------------------------------------------------------------------------
# observation checks
# ---------------------------------------------------------------------------


@dataclass
class Check:
    claim: str
    expected: Any
    computed: Any
    passed: bool | None  # None: recorded, not asserted
    flagged: bool = False

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "expected": _jsonable(self.expected),
            "computed": _jsonable(self.computed),
            "pass": self.passed,
            "flagged": self.flagged,
        }


def _jsonable(x):
    if isinstance(x, (tuple, list, set, frozenset)):
        return [_jsonable(v) for v in (sorted(x) if isinstance(x, (set, frozenset)) else x)]
    return x


@dataclass
class ObservationReport:
    obs_id: str
    params: dict
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "observation": self.obs_id,
            "params": self.params,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _eq(claim, expected, computed) -> Check:
    return Check(claim, expected, computed, expected == computed)


def _tpos(G, u):
    p = covers_T(G, u)
    return (p.t1, p.t2, p.t3)


_NONE3 = (False, False, False)


def _obs_2_1(n):
    c = build(ConstructionSpec(1, n))
    G, u = c.graph, c.apex
    return [_eq("delta2(G1) = 1", 1, min_degree(G, 2)), _eq("no T covers apex", _NONE3, _tpos(G, u))]


def _obs_2_2(k):
    c = build(ConstructionSpec(2, k=k))
    G, u = c.graph, c.apex
    return [_eq("delta2(G2) = 2", 2, min_degree(G, 2)), _eq("no T covers apex", _NONE3, _tpos(G, u))]


def _obs_2_4(n):
    c = build(ConstructionSpec(3, n))
    G, u = c.graph, c.apex
    floor = ceil(n * n / 9)
    d1 = min_degree(G, 1)
    return [
        Check(f"delta1(G3) >= ceil(n^2/9) = {floor}", floor, d1, d1 >= floor),
        _eq("no T covers apex", _NONE3, _tpos(G, u)),
    ]


def _obs_3_1(n):
    c = build(ConstructionSpec(4, n))
    G = c.graph
    unc = has_F_covering(G, "P2").uncovered
    return [
        _eq("delta1(G4) = 3", 3, min_degree(G, 1)),
        Check("no P2 covers a vertex of A", list(c.side_a), unc, set(c.side_a) <= set(unc)),
    ]


def _obs_3_2(n):
    c = build(ConstructionSpec(5, n))
    G, u = c.graph, c.apex
    return [_eq("delta2(G5) = 1", 1, min_degree(G, 2)), _eq("no P2 centred at apex", False, covers_P2_center(G, u))]


def _obs_3_3(n):
    c = build(ConstructionSpec(6, n))
    G, u = c.graph, c.apex
    link = set(map(tuple, _link_edges(G, u)))
    book = {(1, 2)} | {(1, x) for x in range(3, n)} | {(2, x) for x in range(3, n)}
    return [
        _eq("delta2(G6) = 2", 2, min_degree(G, 2)),
        Check("link of apex is the book graph on spine {a,b}", sorted(book), sorted(link), link == book),
        _eq("no S3 centred at apex", False, covers_Sk_center(G, u, 3)),
    ]


def _link_edges(G, u):
    from .core import link_graph

    return link_graph(G, u).edge_list()


def _obs_3_6(n):
    c = build(ConstructionSpec(7, n))
    G, u = c.graph, c.apex
    return [
        _eq("delta2(G7) = 1", 1, min_degree(G, 2)),
        _eq("delta1(G7) = n-2", n - 2, min_degree(G, 1)),
        _eq("no P3 covers apex", False, covers_Pk(G, u, 3)),
    ]


def _obs_3_7(k, n):
    c = build(ConstructionSpec(8, n, k))
    G = c.graph
    A = c.side_a
    B = [v for v in range(n) if v not in A]
    checks = [
        _eq("codegree of a mixed pair = n-2", n - 2, G.codegree(A[0], B[0])),
        _eq("codegree of a pair inside A = n-k+2", n - k + 2, G.codegree(A[0], A[1])),
        Check("codegree of a pair inside B = k-3", k - 3, G.codegree(B[0], B[1]), None, flagged=True),
        Check("delta2(G8) = k-3", k - 3, min_degree(G, 2), None, flagged=True),
    ]
    report = has_F_covering(G, f"Pk:{k}")
    covered = [v for v in range(n) if v not in report.uncovered]
    checks.append(Check(f"no vertex lies on a P{k}", [], covered, not covered))
    return checks


def _obs_3_9(k, n):
    c = build(ConstructionSpec(9, n, k))
    G = c.graph
    unc = has_F_covering(G, f"Pk:{k}").uncovered
    return [
        _eq("delta1(G9) = C(2k-1,2)", comb(2 * k - 1, 2), min_degree(G, 1)),
        Check(f"no P{k} covers a vertex of A", list(c.side_a), unc, set(c.side_a) <= set(unc)),
    ]


OBSERVATIONS = {
    "2.1": (_obs_2_1, ("n",)),
    "2.2": (_obs_2_2, ("k",)),
    "2.4": (_obs_2_4, ("n",)),
    "3.1": (_obs_3_1, ("n",)),
    "3.2": (_obs_3_2, ("n",)),
    "3.3": (_obs_3_3, ("n",)),
    "3.6": (_obs_3_6, ("n",)),
    "3.7": (_obs_3_7, ("k", "n")),
    "3.9": (_obs_3_9, ("k", "n")),
}


def verify_observation(obs_id: str, **params) -> ObservationReport:
    """Build the construction behind an observation and check each claim."""
    try:
        fn, names = OBSERVATIONS[str(obs_id)]
    except KeyError:
        raise InvalidArgument(f"unknown observation {obs_id!r}") from None
    missing = [p for p in names if p not in params]
    if missing:
        raise InvalidArgument(f"observation {obs_id} needs {missing}")
    args = [params[p] for p in names]
    return ObservationReport(str(obs_id), {p: params[p] for p in names}, fn(*args))
