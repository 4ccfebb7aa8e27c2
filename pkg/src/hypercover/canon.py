"""Exact canonical labelling and isomorphism for 3-graphs.

Individualisation-refinement search: vertices are split into ordered cells by
how their edges distribute over the current cells, a vertex of the first
non-singleton cell is individualised, and the search recurses until the
partition is discrete.  Every leaf induces a relabelling; the canonical form
is the relabelled bitset that is largest as an integer.  Leaves that reproduce
an already seen graph yield automorphisms, which prune equivalent subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import ThreeGraph, _rank, triples

__all__ = [
    "Labelling",
    "canonical_labelling",
    "canonical_form",
    "is_isomorphic",
    "automorphism_generators",
    "vertex_orbits",
    "triple_orbits",
    "group_order",
]


@dataclass
class Labelling:
    """Result of the search: ``perm[v]`` is the canonical label of ``v``."""

    perm: tuple[int, ...]
    form: ThreeGraph
    generators: list[tuple[int, ...]] = field(default_factory=list)
    leaves: int = 0


def _refine(G: ThreeGraph, cells: list[list[int]]) -> list[list[int]]:
    n, nbr = G.n, G.nbr
    while True:
        masks = []
        cell_of = [0] * n
        for i, cell in enumerate(cells):
            m = 0
            for v in cell:
                m |= 1 << v
                cell_of[v] = i
            masks.append(m)
        k = len(cells)
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sigs = {}
            for v in cell:
                counts = [0] * (k * k)
                base = v * n
                for x in range(n):
                    row = nbr[base + x]
                    if not row:
                        continue
                    off = cell_of[x] * k
                    for j in range(k):
                        c = (row & masks[j]).bit_count()
                        if c:
                            counts[off + j] += c
                sigs[v] = tuple(counts)
            distinct = sorted(set(sigs.values()))
            if len(distinct) == 1:
                new_cells.append(cell)
                continue
            changed = True
            for s in distinct:
                new_cells.append([v for v in cell if sigs[v] == s])
        cells = new_cells
        if not changed:
            return cells


def _leaf_bits(edge_list, lab) -> int:
    bits = 0
    for a, b, c in edge_list:
        x, y, z = sorted((lab[a], lab[b], lab[c]))
        bits |= 1 << _rank(x, y, z)
    return bits


def _orbit_roots(n: int, gens) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_labelling(G: ThreeGraph) -> Labelling:
    n = G.n
    edge_list = G.edge_list()
    state = {
        "first": None,  # (bits, lab, path)
        "best": None,
        "gens": [],
        "leaves": 0,
    }

    def leaf(cells, path):
        lab = [0] * n
        for pos, cell in enumerate(cells):
            lab[cell[0]] = pos
        bits = _leaf_bits(edge_list, lab)
        state["leaves"] += 1
        if state["first"] is None:
            state["first"] = state["best"] = (bits, lab, path)
            return None
        for key in ("first", "best"):
            ref_bits, ref_lab, ref_path = state[key]
            if bits == ref_bits:
                inv = [0] * n
                for v, p in enumerate(lab):
                    inv[p] = v
                gamma = tuple(inv[ref_lab[v]] for v in range(n))
                if any(gamma[v] != v for v in range(n)):
                    state["gens"].append(gamma)
                common = 0
                while common < len(path) and path[common] == ref_path[common]:
                    common += 1
                return common
        if bits > state["best"][0]:
            state["best"] = (bits, lab, path)
        return None

    def search(cells, path):
        cells = _refine(G, cells)
        if len(cells) == n:
            return leaf(cells, path)
        ti = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[ti]
        explored: list[int] = []
        depth = len(path)
        for w in target:
            if explored:
                fixing = [g for g in state["gens"] if all(g[p] == p for p in path)]
                if fixing:
                    roots = _orbit_roots(n, fixing)
                    if any(roots[w] == roots[x] for x in explored):
                        continue
            explored.append(w)
            child = cells[:ti] + [[w], [x for x in target if x != w]] + cells[ti + 1 :]
            jump = search(child, path + [w])
            if jump is not None and jump < depth:
                return jump
        return None

    if n == 0:
        return Labelling((), G)
    search([list(range(n))], [])
    bits, lab, _ = state["best"]
    return Labelling(tuple(lab), ThreeGraph(n, bits), state["gens"], state["leaves"])


def canonical_form(G: ThreeGraph) -> ThreeGraph:
    """Isomorphism-invariant representative of the class of ``G``."""
    return canonical_labelling(G).form


def _invariant(G: ThreeGraph):
    n, nbr = G.n, G.nbr
    codeg = sorted(nbr[a * n + b].bit_count() for a in range(n) for b in range(a + 1, n))
    return (n, G.m, tuple(sorted(G.degrees)), tuple(codeg))


def is_isomorphic(G: ThreeGraph, H: ThreeGraph) -> bool:
    if G.n != H.n or G.m != H.m:
        return False
    if G == H:
        return True
    if _invariant(G) != _invariant(H):
        return False
    return canonical_form(G) == canonical_form(H)


def automorphism_generators(G: ThreeGraph) -> list[tuple[int, ...]]:
    return canonical_labelling(G).generators


def vertex_orbits(G: ThreeGraph, gens=None) -> list[int]:
    """Orbit representative (least vertex) for every vertex."""
    if gens is None:
        gens = automorphism_generators(G)
    return _orbit_roots(G.n, gens)


def triple_orbits(n: int, gens: Sequence[Sequence[int]]) -> list[int]:
    """Orbit representative (least colex rank) for every triple of ``[n]``."""
    table = triples(n)
    parent = list(range(len(table)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for t, (a, b, c) in enumerate(table):
            x, y, z = sorted((g[a], g[b], g[c]))
            r1, r2 = find(t), find(_rank(x, y, z))
            if r1 != r2:
                parent[max(r1, r2)] = min(r1, r2)
    return [find(t) for t in range(len(table))]


def group_order(n: int, gens: Sequence[Sequence[int]]) -> int:
    """Order of the permutation group generated by ``gens`` (closure; small n only)."""
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[v]] for v in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)
