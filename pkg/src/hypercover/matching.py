"""2-graph subroutines: maximum matching, the Erdős–Gallai bound,
book-graph classification and longest cycles."""

from __future__ import annotations

import enum
from collections import deque
from math import comb

from .core import InvalidArgument, TwoGraph, _bits

__all__ = [
    "max_matching",
    "matching_number",
    "has_matching",
    "erdos_gallai_bound",
    "BookClass",
    "InternalInconsistency",
    "classify_no3matching",
    "book_graph",
    "longest_cycle_length",
]


def _edmonds(adj: list[int], n: int) -> list[int]:
    """Maximum matching in a general graph (Edmonds' blossom algorithm).

    ``adj`` holds neighbour bitmasks. Returns ``mate`` with -1 for exposed vertices.
    """
    mate = [-1] * n
    # greedy start
    for v in range(n):
        if mate[v] == -1:
            for w in _bits(adj[v]):
                if mate[w] == -1:
                    mate[v], mate[w] = w, v
                    break

    def lca(a, b, base, parent):
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[mate[b]]

    def mark_path(v, b, child, base, parent, blossom):
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def find_path(root):
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in _bits(adj[v]):
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to, base, parent)
                    blossom = [False] * n
                    mark_path(v, cur, to, base, parent, blossom)
                    mark_path(to, cur, v, base, parent, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return to, parent
                    used[mate[to]] = True
                    q.append(mate[to])
        return -1, parent

    for root in range(n):
        if mate[root] != -1 or not adj[root]:
            continue
        end, parent = find_path(root)
        v = end
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v], mate[pv] = pv, v
            v = nxt
    return mate


def max_matching(H: TwoGraph) -> tuple[int, list[tuple[int, int]]]:
    """Size of a maximum matching of ``H`` and one such matching."""
    mate = _edmonds(list(H.adj), H.n)
    edges = [(v, w) for v, w in enumerate(mate) if w > v]
    return len(edges), edges


def matching_number(adj, n: int | None = None) -> int:
    """Matching number from a list of adjacency bitmasks."""
    adj = list(adj)
    n = len(adj) if n is None else n
    return sum(1 for v, w in enumerate(_edmonds(adj, n)) if w > v)


def has_matching(adj, k: int) -> bool:
    """Whether the graph given by adjacency bitmasks has ``k`` disjoint edges."""
    if k <= 0:
        return True
    adj = list(adj)
    edges_twice = sum(row.bit_count() for row in adj)
    if edges_twice < 2 * k:
        return False
    return matching_number(adj) >= k


def erdos_gallai_bound(n: int, k: int) -> int:
    """Largest edge count of an ``n``-vertex graph without a ``k``-matching."""
    if k < 1 or n < 2 * k - 1:
        raise InvalidArgument(f"need n >= 2k-1 >= 1, got n={n}, k={k}")
    return max(comb(2 * k - 1, 2), comb(n, 2) - comb(n - k + 1, 2))


class BookClass(enum.Enum):
    BOOK = "Book"
    BOOK_MINUS = "BookMinus"
    NOT_APPLICABLE = "NotApplicable"


class InternalInconsistency(AssertionError):
    """A case that the book-structure theorem rules out; indicates a bug."""


def book_graph(n: int, spine: bool = True) -> TwoGraph:
    """``B_{n-2}`` on vertices ``0..n-1`` with spine ``{0, 1}``; without the
    spine edge when ``spine`` is false."""
    edges = [(0, v) for v in range(2, n)] + [(1, v) for v in range(2, n)]
    if spine:
        edges.append((0, 1))
    return TwoGraph.from_edges(n, edges)


def classify_no3matching(H: TwoGraph) -> BookClass:
    """Book / BookMinus for graphs with n >= 7, min degree >= 2 and no 3-matching."""
    n = H.n
    if n < 7 or H.min_degree() < 2 or matching_number(H.adj) >= 3:
        return BookClass.NOT_APPLICABLE
    for x in range(n):
        for y in range(x + 1, n):
            pair = 1 << x | 1 << y
            if all(H.adj[v] == pair for v in range(n) if v != x and v != y):
                return BookClass.BOOK if H.has_edge(x, y) else BookClass.BOOK_MINUS
    raise InternalInconsistency(f"{H.edge_list()} has no 3-matching and min degree >= 2 but is not a book")


def longest_cycle_length(H: TwoGraph) -> int:
    """Exact length of a longest cycle, 0 for forests.

    Each cycle is found from its least vertex; a branch is cut once even
    visiting every remaining candidate could not beat the best cycle so far.
    """
    n, adj = H.n, H.adj
    # vertices on some cycle have degree >= 2 after pruning leaves
    alive = (1 << n) - 1
    deg = [row.bit_count() for row in adj]
    stack = [v for v in range(n) if deg[v] < 2]
    while stack:
        v = stack.pop()
        if not alive >> v & 1:
            continue
        alive &= ~(1 << v)
        for w in _bits(adj[v] & alive):
            deg[w] -= 1
            if deg[w] < 2:
                stack.append(w)
    best = 0
    verts = list(_bits(alive))
    for s in verts:
        allowed = alive & ~((1 << (s + 1)) - 1)  # vertices larger than s
        if allowed.bit_count() + 1 <= best:
            break
        target = adj[s]

        def dfs(v, visited, length):
            nonlocal best
            if length >= 3 and target >> v & 1 and length > best:
                best = length
            free = allowed & ~visited
            if length + free.bit_count() <= best:
                return
            for w in _bits(adj[v] & free):
                dfs(w, visited | 1 << w, length + 1)

        dfs(s, 1 << s, 1)
    return best
