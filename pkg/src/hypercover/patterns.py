"""Rooted pattern embedding and the covering detectors.

A vertex ``u`` is covered by a pattern ``F`` if some copy of ``F`` in ``G``
contains ``u``.  :func:`find_rooted_embedding` is the generic oracle; the
``covers_*`` functions are specialised detectors that must agree with it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Union

from .core import InvalidArgument, ThreeGraph, _bits, parse_graph, dumps
from .matching import has_matching

__all__ = [
    "Pattern",
    "generalized_triangle",
    "star",
    "linear_path",
    "TrianglePositions",
    "CoverReport",
    "PatternSpec",
    "resolve_pattern",
    "find_rooted_embedding",
    "covers_T",
    "covers_P2_center",
    "covers_Sk_center",
    "covers_Sk",
    "covers_Pk",
    "covers_P3_position2",
    "has_F_covering",
    "load_pattern",
    "dump_pattern",
]


@dataclass(frozen=True)
class Pattern:
    """Small 3-graph ``F`` on vertices ``0..m-1`` with a designated root."""

    m: int
    edges: tuple[tuple[int, int, int], ...]
    root: int = 0
    name: str = "F"

    def __post_init__(self):
        norm = tuple(tuple(sorted(e)) for e in self.edges)
        if len(set(norm)) != len(norm):
            raise InvalidArgument("pattern edges must be distinct")
        for e in norm:
            if len(set(e)) != 3 or min(e) < 0 or max(e) >= self.m:
                raise InvalidArgument(f"bad pattern edge {e}")
        if not 0 <= self.root < self.m:
            raise InvalidArgument("root out of range")
        if {v for e in norm for v in e} != set(range(self.m)):
            raise InvalidArgument("every pattern vertex must lie in an edge")
        object.__setattr__(self, "edges", norm)

    def rooted(self, root: int) -> Pattern:
        return Pattern(self.m, self.edges, root, self.name)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.m
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    def as_graph(self) -> ThreeGraph:
        return ThreeGraph.from_edges(self.m, self.edges)

    @cached_property
    def root_orbits(self) -> tuple[int, ...]:
        """Least vertex of each automorphism orbit of the pattern."""
        return _root_orbits(self.m, self.edges)


@lru_cache(maxsize=None)
def _root_orbits(m, edges):
    from .canon import vertex_orbits

    roots = vertex_orbits(ThreeGraph.from_edges(m, edges))
    return tuple(sorted(set(roots)))


def generalized_triangle(root: int = 4) -> Pattern:
    """``T`` with v1..v5 as 0..4: edges 012, 013, 234.

    Root 4 is position T1, root 2 (or 3) is T2, root 0 (or 1) is T3.
    """
    return Pattern(5, ((0, 1, 2), (0, 1, 3), (2, 3, 4)), root, "T")


def star(k: int, root: int = 0) -> Pattern:
    """``S_k``: centre 0 and edges ``{0, 2j+1, 2j+2}``."""
    if k < 1:
        raise InvalidArgument("k must be positive")
    return Pattern(2 * k + 1, tuple((0, 2 * j + 1, 2 * j + 2) for j in range(k)), root, f"S{k}")


def linear_path(k: int, root: int = 0) -> Pattern:
    """``P_k`` on 0..2k with edges ``{2j, 2j+1, 2j+2}``."""
    if k < 1:
        raise InvalidArgument("k must be positive")
    return Pattern(2 * k + 1, tuple((2 * j, 2 * j + 1, 2 * j + 2) for j in range(k)), root, f"P{k}")


# ---------------------------------------------------------------------------
# generic rooted embedding
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _plan(m: int, edges: tuple, root: int):
    """Placement order and per-step edge checks for a rooted pattern."""
    deg = [0] * m
    for e in edges:
        for v in e:
            deg[v] += 1
    order = [root]
    placed = {root}
    while len(order) < m:
        def key(w):
            closing = sum(1 for e in edges if w in e and all(x in placed for x in e if x != w))
            touching = sum(1 for e in edges if w in e and any(x in placed for x in e if x != w))
            return (-closing, -touching, -deg[w], w)

        w = min((v for v in range(m) if v not in placed), key=key)
        order.append(w)
        placed.add(w)
    pos = {v: i for i, v in enumerate(order)}
    steps = []
    for i, w in enumerate(order):
        if i == 0:
            continue
        checks = []
        anchor_single = None
        for e in edges:
            if w not in e:
                continue
            others = [x for x in e if x != w]
            if all(pos[x] < i for x in others):
                checks.append((pos[others[0]], pos[others[1]]))
            elif anchor_single is None:
                earlier = [x for x in others if pos[x] < i]
                if earlier:
                    anchor_single = pos[earlier[0]]
        steps.append((deg[w], tuple(checks), anchor_single))
    return tuple(order), tuple(steps), deg[root]


def _embed(G: ThreeGraph, m: int, edges: tuple, root: int, u: int):
    n = G.n
    if m > n:
        return None
    order, steps, root_deg = _plan(m, edges, root)
    gdeg = G.degrees
    if gdeg[u] < root_deg:
        return None
    nbr = G.nbr
    twin = G.twin_class
    img = [0] * m
    img[0] = u
    full = (1 << n) - 1

    def extend(i, used):
        if i == m:
            return True
        need, checks, anchor = steps[i - 1]
        if checks:
            a, b = checks[0]
            cand = nbr[img[a] * n + img[b]]
            for a, b in checks[1:]:
                cand &= nbr[img[a] * n + img[b]]
        elif anchor is not None:
            base = img[anchor] * n
            cand = 0
            for x in range(n):
                if nbr[base + x]:
                    cand |= 1 << x
        else:
            cand = full
        cand &= ~used
        tried = 0
        for x in _bits(cand):
            if gdeg[x] < need:
                continue
            # a failed unused twin fails again: the swap fixes every placed vertex
            if tried >> twin[x] & 1:
                continue
            tried |= 1 << twin[x]
            img[i] = x
            if extend(i + 1, used | 1 << x):
                return True
        return False

    if not extend(1, 1 << u):
        return None
    return {order[i]: img[i] for i in range(m)}


def find_rooted_embedding(G: ThreeGraph, F: Pattern, u: int) -> dict[int, int] | None:
    """Injective map from pattern vertices to ``V(G)`` sending ``F.root`` to ``u``
    and every pattern edge onto an edge of ``G``; ``None`` if there is none."""
    if not 0 <= u < G.n:
        raise InvalidArgument(f"vertex {u} out of range")
    return _embed(G, F.m, F.edges, F.root, u)


# ---------------------------------------------------------------------------
# specialised detectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrianglePositions:
    t1: bool
    t2: bool
    t3: bool

    def any(self) -> bool:
        return self.t1 or self.t2 or self.t3

    def labels(self) -> frozenset[str]:
        out = {name for name, flag in (("T1", self.t1), ("T2", self.t2), ("T3", self.t3)) if flag}
        if out:
            out.add("T")
        return frozenset(out)


def _t1(G: ThreeGraph, u: int) -> bool:
    # {u,x,y}, {s,t,x}, {s,t,y}
    n, nbr = G.n, G.nbr
    ub = u * n
    for x in range(n):
        row = nbr[ub + x]
        for y in _bits(row >> (x + 1) << (x + 1)):
            avoid = ~(1 << u | 1 << x | 1 << y)
            xb, yb = x * n, y * n
            for s in range(n):
                if s == u or s == x or s == y:
                    continue
                if nbr[xb + s] & nbr[yb + s] & avoid:
                    return True
    return False


def _t2(G: ThreeGraph, u: int) -> bool:
    # {u,a,b}, {a,b,c}, {u,c,d}
    n, nbr = G.n, G.nbr
    ub = u * n
    for a in range(n):
        row = nbr[ub + a]
        for b in _bits(row >> (a + 1) << (a + 1)):
            ab = 1 << a | 1 << b
            for c in _bits(nbr[a * n + b] & ~(1 << u)):
                if nbr[ub + c] & ~(ab | 1 << c):
                    return True
    return False


def _t3(G: ThreeGraph, u: int) -> bool:
    # {u,b,c}, {u,b,d}, {c,d,e}
    n, nbr = G.n, G.nbr
    ub = u * n
    for b in range(n):
        row = nbr[ub + b]
        if row.bit_count() < 2:
            continue
        avoid = ~(1 << u | 1 << b)
        cs = list(_bits(row))
        for i, c in enumerate(cs):
            cb = c * n
            for d in cs[i + 1 :]:
                if nbr[cb + d] & avoid:
                    return True
    return False


def covers_T(G: ThreeGraph, u: int) -> TrianglePositions:
    """Which of the three positions of the generalized triangle ``u`` can occupy."""
    if not 0 <= u < G.n:
        raise InvalidArgument(f"vertex {u} out of range")
    return TrianglePositions(_t1(G, u), _t2(G, u), _t3(G, u))


def covers_P2_center(G: ThreeGraph, u: int) -> bool:
    return has_matching(G.link_rows(u), 2)


def covers_Sk_center(G: ThreeGraph, u: int, k: int) -> bool:
    return has_matching(G.link_rows(u), k)


def covers_Sk(G: ThreeGraph, u: int, k: int) -> bool:
    """``u`` as centre of ``S_k``, or as a leaf ``{u, a, c}`` with centre ``c``."""
    if covers_Sk_center(G, u, k):
        return True
    n, nbr = G.n, G.nbr
    ub = u * n
    for c in range(n):
        partners = nbr[ub + c]
        if not partners:
            continue
        if k == 1:
            return True
        rows = G.link_rows(c)
        for a in _bits(partners):
            drop = 1 << u | 1 << a
            sub = [0 if (v == u or v == a) else row & ~drop for v, row in enumerate(rows)]
            if has_matching(sub, k - 1):
                return True
    return False


def covers_Pk(G: ThreeGraph, u: int, k: int) -> bool:
    """``u`` on some linear ``k``-path, tried once per root orbit of ``P_k``."""
    P = linear_path(k)
    return any(_embed(G, P.m, P.edges, r, u) is not None for r in P.root_orbits)


def covers_P3_position2(G: ThreeGraph, u: int) -> bool:
    """``{u,v1,v2}, {u,v3,v4}, {v4,v5,v6}`` on seven distinct vertices."""
    n, nbr = G.n, G.nbr
    ub = u * n
    link_edges = [(a, b) for a in range(n) for b in _bits(nbr[ub + a] >> (a + 1) << (a + 1))]
    for v4 in range(n):
        if v4 == u:
            continue
        v4b = v4 * n
        for v3 in _bits(nbr[ub + v4]):
            # {v5, v6}: edge of link(v4) avoiding u and v3
            blocked = 1 << u | 1 << v3 | 1 << v4
            for v5 in range(n):
                if blocked >> v5 & 1:
                    continue
                for v6 in _bits(nbr[v4b + v5] & ~blocked & ~((1 << (v5 + 1)) - 1)):
                    used = blocked | 1 << v5 | 1 << v6
                    for a, b in link_edges:
                        if not (used >> a & 1 or used >> b & 1):
                            return True
    return False


# ---------------------------------------------------------------------------
# named patterns and covering reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternSpec:
    """A named covering question: which pattern, which root positions count."""

    name: str
    pattern: Pattern
    roots: tuple[int, ...]
    detector: Callable[[ThreeGraph, int], bool] = field(compare=False, repr=False)

    def covers(self, G: ThreeGraph, u: int) -> bool:
        return self.detector(G, u)

    def oracle(self, G: ThreeGraph, u: int) -> bool:
        """Same question answered by the generic embedder, one call per root."""
        P = self.pattern
        return any(_embed(G, P.m, P.edges, r, u) is not None for r in self.roots)


def _parse_k(name: str, prefix: str) -> int:
    try:
        k = int(name[len(prefix) :])
    except ValueError:
        raise InvalidArgument(f"bad pattern name {name!r}") from None
    if k < 1:
        raise InvalidArgument(f"k must be positive in {name!r}")
    return k


@lru_cache(maxsize=None)
def resolve_pattern(name: str) -> PatternSpec:
    """Map a pattern name (``T``, ``T1``..``T3``, ``P2``, ``P2c``, ``P3``,
    ``P3pos2``, ``Pk:<k>``, ``Sk:<k>``, ``Skc:<k>``) to a :class:`PatternSpec`."""
    T = generalized_triangle()
    if name == "T":
        return PatternSpec(name, T, T.root_orbits, lambda G, u: covers_T(G, u).any())
    if name in ("T1", "T2", "T3"):
        root = {"T1": 4, "T2": 2, "T3": 0}[name]
        fn = {"T1": _t1, "T2": _t2, "T3": _t3}[name]
        return PatternSpec(name, T.rooted(root), (root,), fn)
    if name == "P2c":
        return PatternSpec(name, linear_path(2, 2), (2,), covers_P2_center)
    if name == "P3pos2":
        return PatternSpec(name, linear_path(3, 2), (2,), covers_P3_position2)
    if name.startswith("Pk:") or name in ("P2", "P3"):
        k = int(name[1]) if name in ("P2", "P3") else _parse_k(name, "Pk:")
        P = linear_path(k)
        return PatternSpec(name, P, P.root_orbits, lambda G, u, k=k: covers_Pk(G, u, k))
    if name.startswith("Skc:"):
        k = _parse_k(name, "Skc:")
        return PatternSpec(name, star(k), (0,), lambda G, u, k=k: covers_Sk_center(G, u, k))
    if name.startswith("Sk:"):
        k = _parse_k(name, "Sk:")
        S = star(k)
        return PatternSpec(name, S, S.root_orbits, lambda G, u, k=k: covers_Sk(G, u, k))
    raise InvalidArgument(f"unknown pattern {name!r}")


def custom_spec(F: Pattern) -> PatternSpec:
    return PatternSpec(F.name, F, (F.root,), lambda G, u: find_rooted_embedding(G, F, u) is not None)


@dataclass
class CoverReport:
    pattern: str
    labels: dict[int, frozenset[str]]
    uncovered: list[int]

    @property
    def covering(self) -> bool:
        return not self.uncovered

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "covering": self.covering,
            "uncovered": list(self.uncovered),
            "labels": {str(v): sorted(ls) for v, ls in sorted(self.labels.items())},
        }


def has_F_covering(G: ThreeGraph, F: Union[Pattern, str], vertices=None) -> CoverReport:
    """Run the detector for ``F`` at every vertex (or at ``vertices``)."""
    verts = range(G.n) if vertices is None else sorted(set(vertices))
    labels: dict[int, frozenset[str]] = {}
    if isinstance(F, Pattern):
        spec = custom_spec(F)
    else:
        spec = resolve_pattern(F)
    name = spec.name
    for v in verts:
        if not 0 <= v < G.n:
            raise InvalidArgument(f"vertex {v} out of range")
        if name == "T":
            labels[v] = covers_T(G, v).labels()
        else:
            labels[v] = frozenset({name}) if spec.covers(G, v) else frozenset()
    uncovered = [v for v in verts if name not in labels[v]]
    return CoverReport(name, labels, uncovered)


def load_pattern(text: str, name: str = "F") -> Pattern:
    """Pattern file: core text format plus one ``r <root>`` line."""
    G, _, root = parse_graph(text, allow_root=True)
    return Pattern(G.n, tuple(G.edge_list()), 0 if root is None else root, name)


def dump_pattern(F: Pattern) -> str:
    body = dumps(F.as_graph(), comments=[f"pattern {F.name}"])
    return body + f"r {F.root}\n"
