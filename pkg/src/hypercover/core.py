"""3-graphs and 2-graphs as integer bitsets.

A :class:`ThreeGraph` on ``n`` vertices stores its edge set as one Python
integer; bit ``t`` is set iff the triple with colex rank ``t`` is an edge.
Colex rank of ``a < b < c`` is ``C(c,3) + C(b,2) + C(a,1)``, so the rank of a
triple does not depend on ``n`` and serialized bitsets stay portable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

__all__ = [
    "InvalidArgument",
    "GraphFormatError",
    "ThreeGraph",
    "TwoGraph",
    "triple_index",
    "triple_unindex",
    "triples",
    "degree",
    "min_degree",
    "link_graph",
    "induced",
    "complete",
    "dumps",
    "loads",
    "parse_graph",
]


class InvalidArgument(ValueError):
    """Raised when an operation is called outside its precondition."""


class GraphFormatError(ValueError):
    """Raised by the text parser; ``lineno`` is 1-based (0 if not line specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


# ---------------------------------------------------------------------------
# triple indexing
# ---------------------------------------------------------------------------


def _rank(a: int, b: int, c: int) -> int:
    return comb(c, 3) + comb(b, 2) + a


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[tuple[int, int, int], ...]:
    """All triples ``(a, b, c)`` with ``a < b < c < n`` in colex order."""
    out = [(a, b, c) for c in range(n) for b in range(c) for a in range(b)]
    return tuple(out)


def triple_index(a: int, b: int, c: int, n: int) -> int:
    """Colex rank of the triple ``{a, b, c}`` among the triples of ``[n]``."""
    if len({a, b, c}) != 3:
        raise InvalidArgument(f"vertices must be distinct, got {(a, b, c)}")
    if min(a, b, c) < 0 or max(a, b, c) >= n:
        raise InvalidArgument(f"vertices {(a, b, c)} out of range for n={n}")
    a, b, c = sorted((a, b, c))
    return _rank(a, b, c)


def triple_unindex(t: int, n: int) -> tuple[int, int, int]:
    if not 0 <= t < comb(n, 3):
        raise InvalidArgument(f"triple index {t} out of range for n={n}")
    return triples(n)[t]


@lru_cache(maxsize=None)
def _pair_triple_masks(n: int) -> tuple[int, ...]:
    # flat n*n table: edge-bitset mask of all triples containing {a, b}
    masks = [0] * (n * n)
    for t, (a, b, c) in enumerate(triples(n)):
        bit = 1 << t
        for x, y in ((a, b), (a, c), (b, c)):
            masks[x * n + y] |= bit
            masks[y * n + x] |= bit
    return tuple(masks)


@lru_cache(maxsize=None)
def _vertex_triple_masks(n: int) -> tuple[int, ...]:
    masks = [0] * n
    for t, tri in enumerate(triples(n)):
        for v in tri:
            masks[v] |= 1 << t
    return tuple(masks)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# ---------------------------------------------------------------------------
# 3-graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThreeGraph:
    """Immutable 3-uniform hypergraph on vertices ``0..n-1``."""

    n: int
    edges: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgument("n must be non-negative")
        if self.edges < 0 or self.edges >> comb(self.n, 3):
            raise InvalidArgument("edge bitset has bits outside C(n,3)")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> ThreeGraph:
        bits = 0
        for e in edges:
            a, b, c = e
            bits |= 1 << triple_index(a, b, c, n)
        return cls(n, bits)

    @property
    def m(self) -> int:
        return self.edges.bit_count()

    def __len__(self) -> int:
        return self.m

    def edge_list(self) -> list[tuple[int, int, int]]:
        table = triples(self.n)
        return [table[t] for t in _bits(self.edges)]

    def has_edge(self, a: int, b: int, c: int) -> bool:
        return bool(self.edges >> triple_index(a, b, c, self.n) & 1)

    def with_edges(self, *edges: Sequence[int]) -> ThreeGraph:
        bits = self.edges
        for a, b, c in edges:
            bits |= 1 << triple_index(a, b, c, self.n)
        return ThreeGraph(self.n, bits)

    def without_edges(self, *edges: Sequence[int]) -> ThreeGraph:
        bits = self.edges
        for a, b, c in edges:
            bits &= ~(1 << triple_index(a, b, c, self.n))
        return ThreeGraph(self.n, bits)

    def relabel(self, perm: Sequence[int]) -> ThreeGraph:
        """Image of the graph under ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidArgument("perm must be a permutation of range(n)")
        bits = 0
        for a, b, c in self.edge_list():
            x, y, z = sorted((perm[a], perm[b], perm[c]))
            bits |= 1 << _rank(x, y, z)
        return ThreeGraph(self.n, bits)

    # -- neighbourhood tables, built lazily and cached on the instance --

    @cached_property
    def nbr(self) -> tuple[int, ...]:
        """Flat ``n*n`` table; ``nbr[a*n+b]`` is the vertex bitmask of N({a,b})."""
        n = self.n
        table = [0] * (n * n)
        for a, b, c in self.edge_list():
            table[a * n + b] |= 1 << c
            table[b * n + a] |= 1 << c
            table[a * n + c] |= 1 << b
            table[c * n + a] |= 1 << b
            table[b * n + c] |= 1 << a
            table[c * n + b] |= 1 << a
        return tuple(table)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        masks = _vertex_triple_masks(self.n)
        return tuple((self.edges & masks[v]).bit_count() for v in range(self.n))

    @cached_property
    def twin_class(self) -> tuple[int, ...]:
        """Least vertex ``y`` such that swapping ``v`` and ``y`` is an automorphism."""
        n, nbr = self.n, self.nbr
        cls = list(range(n))
        for y in range(n):
            if cls[y] != y:
                continue
            for x in range(y + 1, n):
                if cls[x] != x:
                    continue
                keep = ~(1 << x | 1 << y)
                if all(
                    nbr[x * n + a] & keep == nbr[y * n + a] & keep
                    for a in range(n)
                    if a != x and a != y
                ):
                    cls[x] = y
        return tuple(cls)

    def codegree(self, a: int, b: int) -> int:
        return self.nbr[a * self.n + b].bit_count()

    def link_rows(self, u: int) -> list[int]:
        """Adjacency rows of the link graph of ``u``."""
        n = self.n
        return list(self.nbr[u * n : u * n + n])

    def __repr__(self) -> str:
        return f"ThreeGraph(n={self.n}, m={self.m})"


def complete(n: int) -> ThreeGraph:
    return ThreeGraph(n, (1 << comb(n, 3)) - 1)


def _check_vertex(G, v: int) -> None:
    if not 0 <= v < G.n:
        raise InvalidArgument(f"vertex {v} out of range for n={G.n}")


def degree(G: ThreeGraph, S: Iterable[int]) -> int:
    """Number of edges containing the 1- or 2-set ``S``."""
    S = set(S)
    for v in S:
        _check_vertex(G, v)
    if len(S) == 1:
        (v,) = S
        return G.degrees[v]
    if len(S) == 2:
        a, b = S
        return G.codegree(a, b)
    raise InvalidArgument(f"|S| must be 1 or 2, got {len(S)}")


def min_degree(G: ThreeGraph, i: int) -> int:
    """Minimum ``i``-degree; 0 for a graph without edges."""
    if i not in (1, 2):
        raise InvalidArgument(f"i must be 1 or 2, got {i}")
    if G.n < 3 or G.edges == 0:
        return 0
    if i == 1:
        return min(G.degrees)
    n, nbr = G.n, G.nbr
    return min(nbr[a * n + b].bit_count() for a, b in combinations(range(n), 2))


def link_graph(G: ThreeGraph, u: int) -> TwoGraph:
    _check_vertex(G, u)
    return TwoGraph(G.n, tuple(G.link_rows(u)))


def induced(G: ThreeGraph, S: Iterable[int]) -> ThreeGraph:
    """Sub-hypergraph induced on ``S``, relabelled order-preservingly."""
    verts = sorted(set(S))
    for v in verts:
        _check_vertex(G, v)
    pos = {v: i for i, v in enumerate(verts)}
    keep = set(verts)
    bits = 0
    for a, b, c in G.edge_list():
        if a in keep and b in keep and c in keep:
            bits |= 1 << _rank(pos[a], pos[b], pos[c])
    return ThreeGraph(len(verts), bits)


# ---------------------------------------------------------------------------
# 2-graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoGraph:
    """Simple graph stored as one neighbour bitmask per vertex."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise InvalidArgument("adjacency needs one row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row >> v & 1:
                raise InvalidArgument(f"bad adjacency row for vertex {v}")
            for w in _bits(row):
                if not self.adj[w] >> v & 1:
                    raise InvalidArgument("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> TwoGraph:
        adj = [0] * n
        for a, b in edges:
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise InvalidArgument(f"bad edge {(a, b)} for n={n}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(n, tuple(adj))

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edge_list(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in _bits(self.adj[a] >> (a + 1) << (a + 1))]

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def delete_vertices(self, vs: Iterable[int]) -> TwoGraph:
        """Drop all edges at ``vs``; labels are kept, the vertices become isolated."""
        mask = 0
        for v in vs:
            mask |= 1 << v
        return TwoGraph(self.n, tuple(0 if mask >> v & 1 else row & ~mask for v, row in enumerate(self.adj)))

    def induced(self, S: Iterable[int]) -> TwoGraph:
        verts = sorted(set(S))
        pos = {v: i for i, v in enumerate(verts)}
        return TwoGraph.from_edges(
            len(verts), [(pos[a], pos[b]) for a, b in self.edge_list() if a in pos and b in pos]
        )

    def __repr__(self) -> str:
        return f"TwoGraph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def dumps(G: ThreeGraph, comments: Iterable[str] = ()) -> str:
    """Serialize ``G``: ``p h3 n m`` header, then ``e a b c`` lines in colex order."""
    lines = [f"c {c}" for c in comments]
    lines.append(f"p h3 {G.n} {G.m}")
    lines.extend(f"e {a} {b} {c}" for a, b, c in G.edge_list())
    return "\n".join(lines) + "\n"


_INT = re.compile(r"^-?\d+$")


def parse_graph(text: str, *, allow_root: bool = False):
    """Parse the text format.

    Returns ``(graph, comments, root)``; ``root`` is ``None`` unless an
    ``r <root>`` line is present (only accepted with ``allow_root``).
    """
    n = None
    expected_m = 0
    bits = 0
    comments: list[str] = []
    root = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "c":
            comments.append(line[1:].strip())
            continue
        if not all(_INT.match(tok) for tok in rest[1 if tag == "p" else 0 :]):
            raise GraphFormatError(f"expected integers in {line!r}", lineno)
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(rest) != 3 or rest[0] != "h3":
                raise GraphFormatError("header must be 'p h3 <n> <m>'", lineno)
            n, expected_m = int(rest[1]), int(rest[2])
            if n < 0 or expected_m < 0:
                raise GraphFormatError("negative size in header", lineno)
        elif tag == "e":
            if n is None:
                raise GraphFormatError("edge before header", lineno)
            if len(rest) != 3:
                raise GraphFormatError("edge line needs three vertices", lineno)
            a, b, c = map(int, rest)
            try:
                t = triple_index(a, b, c, n)
            except InvalidArgument as exc:
                raise GraphFormatError(str(exc), lineno) from None
            if bits >> t & 1:
                raise GraphFormatError(f"duplicate edge {sorted((a, b, c))}", lineno)
            bits |= 1 << t
        elif tag == "r" and allow_root:
            if n is None:
                raise GraphFormatError("root before header", lineno)
            if root is not None or len(rest) != 1:
                raise GraphFormatError("expected a single 'r <root>' line", lineno)
            root = int(rest[0])
            if not 0 <= root < n:
                raise GraphFormatError(f"root {root} out of range", lineno)
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p h3' header")
    G = ThreeGraph(n, bits)
    if G.m != expected_m:
        raise GraphFormatError(f"header announces {expected_m} edges, found {G.m}")
    return G, comments, root


def loads(text: str) -> ThreeGraph:
    return parse_graph(text)[0]
