"""Exact thresholds, witness search, seeded sampling and theorem audits.

``c_i(n, F)`` is the largest minimum ``i``-degree of an ``n``-vertex 3-graph
that has a vertex no copy of ``F`` covers.  Small ``n`` is settled by brute
force (vectorised over all labelled graphs, or one graph per isomorphism
class by canonical augmentation); larger ``n`` by a pruned DFS over triple
decisions that either produces a witness or proves none exists.
"""

from __future__ import annotations

import enum
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, floor, perm
from typing import Callable, Iterable, Union

import numpy as np

from .canon import canonical_labelling, triple_orbits
from .core import (
    InvalidArgument,
    ThreeGraph,
    TwoGraph,
    _bits,
    _pair_triple_masks,
    _rank,
    _vertex_triple_masks,
    dumps,
    min_degree,
    triples,
)
from .matching import BookClass, classify_no3matching, erdos_gallai_bound
from .patterns import Pattern, PatternSpec, covers_T, custom_spec, resolve_pattern

__all__ = [
    "LABELED_LIMIT",
    "ISO_LIMIT",
    "WITNESS_LIMIT",
    "Budget",
    "BudgetExceededError",
    "OutcomeKind",
    "SearchStats",
    "SearchOutcome",
    "ExactThreshold",
    "WitnessAtDegree",
    "Audit",
    "SearchTask",
    "run_task",
    "enumerate_threegraphs",
    "compute_threshold_exact",
    "find_witness",
    "random_threegraph",
    "TheoremSpec",
    "THEOREMS",
    "AuditReport",
    "audit_theorem",
    "sgbt_exhaustive",
    "erdos_gallai_exhaustive",
]

LABELED_LIMIT = 6
ISO_LIMIT = 7
WITNESS_LIMIT = 16
DEFAULT_DENSITY = 0.5
# audits sweep densities so that many samples sit right at the degree floor
AUDIT_DENSITIES = (0.0, 0.1, 0.25, 0.5)


# ---------------------------------------------------------------------------
# budgets and outcomes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Budget:
    nodes: int | None = None
    seconds: float | None = None

    def __post_init__(self):
        if self.nodes is not None and self.nodes <= 0:
            raise InvalidArgument("node budget must be positive")
        if self.seconds is not None and self.seconds <= 0:
            raise InvalidArgument("time budget must be positive")

    def to_dict(self) -> dict:
        return {"nodes": self.nodes, "seconds": self.seconds}


class BudgetExceededError(RuntimeError):
    def __init__(self, progress: dict):
        self.progress = progress
        super().__init__(f"budget exceeded after {progress}")


class _Meter:
    """Counts search nodes and enforces a :class:`Budget`."""

    def __init__(self, budget: Budget | None):
        self.budget = budget or Budget()
        self.start = time.perf_counter()
        self.nodes = 0

    def tick(self, what: str = "nodes"):
        self.nodes += 1
        b = self.budget
        if b.nodes is not None and self.nodes > b.nodes:
            raise BudgetExceededError({what: self.nodes - 1, "limit": "nodes"})
        if b.seconds is not None and self.nodes % 256 == 0 and self.elapsed() > b.seconds:
            raise BudgetExceededError({what: self.nodes, "limit": "seconds"})

    def elapsed(self) -> float:
        return time.perf_counter() - self.start


class OutcomeKind(str, enum.Enum):
    VALUE = "Value"
    WITNESS = "Witness"
    EXHAUSTED = "Exhausted"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass
class SearchStats:
    nodes: int = 0
    graphs: int = 0
    elapsed: float = 0.0
    seed: int | None = None


@dataclass
class SearchOutcome:
    kind: OutcomeKind
    value: int | None = None
    graph: ThreeGraph | None = None
    vertex: int | None = None
    certificate: dict | None = None
    progress: dict | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    def to_dict(self) -> dict:
        """JSON-ready view; wall-clock time is left out so reports are reproducible."""
        return {
            "kind": self.kind.value,
            "value": self.value,
            "vertex": self.vertex,
            "witness": None if self.graph is None else dumps(self.graph),
            "certificate": self.certificate,
            "progress": self.progress,
            "stats": {"nodes": self.stats.nodes, "graphs": self.stats.graphs, "seed": self.stats.seed},
        }


def _spec(pattern: Union[str, Pattern, PatternSpec]) -> PatternSpec:
    if isinstance(pattern, PatternSpec):
        return pattern
    if isinstance(pattern, Pattern):
        return custom_spec(pattern)
    return resolve_pattern(pattern)


def _check_i(i: int):
    if i not in (1, 2):
        raise InvalidArgument(f"i must be 1 or 2, got {i}")


def _iset_masks(n: int, i: int) -> list[int]:
    """Edge-bitset mask of every i-set, vertices then pairs in lexicographic order."""
    if i == 1:
        return list(_vertex_triple_masks(n))
    pm = _pair_triple_masks(n)
    return [pm[a * n + b] for a, b in combinations(range(n), 2)]


def _max_degree(n: int, i: int) -> int:
    return comb(n - 1, 2) if i == 1 else max(n - 2, 0)


def _uncovered(G: ThreeGraph, spec: PatternSpec) -> list[int]:
    return [v for v in range(G.n) if not spec.covers(G, v)]


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _check_enum_bounds(n: int, iso: bool):
    limit = ISO_LIMIT if iso else LABELED_LIMIT
    if n < 0:
        raise InvalidArgument("n must be non-negative")
    if n > limit:
        mode = "with isomorph rejection" if iso else "labelled"
        raise InvalidArgument(f"n={n} is beyond the {mode} enumeration bound n <= {limit}")


def enumerate_threegraphs(
    n: int,
    isomorph_rejection: bool = False,
    visitor: Callable[[ThreeGraph], object] | None = None,
    budget: Budget | None = None,
) -> int:
    """Visit every labelled 3-graph on ``n`` vertices, or one per isomorphism
    class by canonical augmentation; returns the number visited.

    Raises :class:`BudgetExceededError` when the budget runs out.
    """
    _check_enum_bounds(n, isomorph_rejection)
    meter = _Meter(budget)
    if not isomorph_rejection:
        for g in range(1 << comb(n, 3)):
            meter.tick("graphs")
            if visitor is not None:
                visitor(ThreeGraph(n, g))
        return meter.nodes
    _augment(n, visitor, meter)
    return meter.nodes


def _canonical_deletion(H: ThreeGraph, lab) -> int:
    # the edge of H that the canonical labelling sends to the top edge of the form
    inv = [0] * H.n
    for v, p in enumerate(lab.perm):
        inv[p] = v
    a, b, c = triples(H.n)[lab.form.edges.bit_length() - 1]
    x, y, z = sorted((inv[a], inv[b], inv[c]))
    return _rank(x, y, z)


def _augment(n: int, visitor, meter: _Meter):
    """McKay-style canonical augmentation by single edges."""
    N = comb(n, 3)
    # explicit stack keeps deep chains (up to C(n,3) edges) off the call stack
    G0 = ThreeGraph(n, 0)
    stack = [(G0, canonical_labelling(G0))]
    while stack:
        G, lab = stack.pop()
        meter.tick("graphs")
        if visitor is not None:
            visitor(G)
        orb = triple_orbits(n, lab.generators)
        children = []
        for t in range(N):
            if G.edges >> t & 1 or orb[t] != t:
                continue
            H = ThreeGraph(n, G.edges | 1 << t)
            labH = canonical_labelling(H)
            orbH = triple_orbits(n, labH.generators)
            if orbH[t] == orbH[_canonical_deletion(H, labH)]:
                children.append((H, labH))
        stack.extend(reversed(children))


# ---------------------------------------------------------------------------
# exact thresholds
# ---------------------------------------------------------------------------


def _vertex_copy_masks(n: int, spec: PatternSpec, u: int) -> list[int]:
    """Edge sets of every copy of the pattern in ``K_n`` that puts ``u`` at
    one of the accepted root positions, sorted."""
    P = spec.pattern
    masks = set()
    if P.m <= n:
        others = [v for v in range(n) if v != u]
        for r in spec.roots:
            order = [r] + [v for v in range(P.m) if v != r]
            pos = {v: j for j, v in enumerate(order)}
            edges = [tuple(pos[v] for v in e) for e in P.edges]
            for img in permutations(others, P.m - 1):
                full = (u,) + img
                mask = 0
                for x, y, z in edges:
                    a, b, c = sorted((full[x], full[y], full[z]))
                    mask |= 1 << _rank(a, b, c)
                masks.add(mask)
    return sorted(masks)


def _copy_count(n: int, spec: PatternSpec) -> int:
    m = spec.pattern.m
    if m > n:
        return 0
    return len(spec.roots) * perm(n - 1, m - 1)


def _copy_masks(n: int, spec: PatternSpec) -> list[list[int]]:
    return [_vertex_copy_masks(n, spec, u) for u in range(n)]


def _exact_chunk(args):
    lo, hi, vertex_masks, iset_masks, dmax = args
    g = np.arange(lo, hi, dtype=np.uint32)
    delta = np.full(g.shape, 255, dtype=np.uint8)
    for m in iset_masks:
        np.minimum(delta, np.bitwise_count(g & np.uint32(m)), out=delta)
    unc = np.zeros(g.shape, dtype=bool)
    for masks in vertex_masks:
        cov = np.zeros(g.shape, dtype=bool)
        for m in masks:
            mm = np.uint32(m)
            cov |= (g & mm) == mm
        unc |= ~cov
    hist_all = np.bincount(delta, minlength=dmax + 1)[: dmax + 1]
    hist_unc = np.bincount(delta[unc], minlength=dmax + 1)[: dmax + 1]
    first = {}
    for d in np.unique(delta[unc]).tolist():
        first[d] = lo + int(np.flatnonzero(unc & (delta == d))[0])
    return hist_all.tolist(), hist_unc.tolist(), first


def _threshold_labeled(n, spec, i, workers, meter):
    N = comb(n, 3)
    total = 1 << N
    vmasks = _copy_masks(n, spec)
    imasks = _iset_masks(n, i)
    dmax = _max_degree(n, i)
    if n < 3:
        imasks = []
    chunk = 1 << 16
    jobs = [(lo, min(lo + chunk, total), vmasks, imasks, dmax) for lo in range(0, total, chunk)]
    hist_all = [0] * (dmax + 1)
    hist_unc = [0] * (dmax + 1)
    first: dict[int, int] = {}

    def merge(res):
        ha, hu, fi = res
        for d in range(dmax + 1):
            hist_all[d] += ha[d]
            hist_unc[d] += hu[d]
        for d, g in fi.items():
            if d not in first or g < first[d]:
                first[d] = g

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for res in pool.map(_exact_chunk, jobs):  # ordered reduction
                merge(res)
    else:
        for job in jobs:
            if meter.budget.seconds is not None and meter.elapsed() > meter.budget.seconds:
                raise BudgetExceededError({"graphs": job[0], "limit": "seconds"})
            merge(_exact_chunk(job))
    meter.nodes = total
    return hist_all, hist_unc, first


def compute_threshold_exact(
    n: int,
    pattern,
    i: int,
    isomorph_rejection: bool = False,
    budget: Budget | None = None,
    workers: int = 1,
) -> SearchOutcome:
    """``c_i(n, F)`` by exhaustive enumeration, with a witness attaining it
    and a certificate that no graph with larger ``delta_i`` is uncovered."""
    _check_i(i)
    _check_enum_bounds(n, isomorph_rejection)
    if n < 3:
        raise InvalidArgument("need n >= 3")
    spec = _spec(pattern)
    meter = _Meter(budget)
    stats = SearchStats()
    try:
        if isomorph_rejection:
            c, witness, cert = _threshold_iso(n, spec, i, meter)
        else:
            hist_all, hist_unc, first = _threshold_labeled(n, spec, i, workers, meter)
            c = max(d for d, k in enumerate(hist_unc) if k)
            witness = ThreeGraph(n, first[c])
            cert = {
                "degree_floor": c + 1,
                "graphs_checked": sum(hist_all[c + 1 :]),
                "uncovered_found": sum(hist_unc[c + 1 :]),
                "graphs_enumerated": 1 << comb(n, 3),
                "mode": "labeled",
            }
    except BudgetExceededError as exc:
        stats.graphs, stats.elapsed = meter.nodes, meter.elapsed()
        return SearchOutcome(OutcomeKind.BUDGET_EXCEEDED, progress=exc.progress, stats=stats)
    stats.graphs, stats.elapsed = meter.nodes, meter.elapsed()
    unc = _uncovered(witness, spec)
    if min_degree(witness, i) != c or not unc:
        raise AssertionError("threshold witness failed re-validation")
    return SearchOutcome(OutcomeKind.VALUE, value=c, graph=witness, vertex=unc[0], certificate=cert, stats=stats)


def _threshold_iso(n, spec, i, meter):
    best = {"c": -1, "G": None, "above": {}}
    classes = []

    def visit(G):
        d = min_degree(G, i)
        covered = not _uncovered(G, spec)
        classes.append((d, covered))
        if not covered and d > best["c"]:
            best["c"], best["G"] = d, G

    _augment(n, visit, meter)
    c = best["c"]
    above = [cov for d, cov in classes if d > c]
    cert = {
        "degree_floor": c + 1,
        "graphs_checked": len(above),
        "uncovered_found": sum(1 for cov in above if not cov),
        "graphs_enumerated": len(classes),
        "mode": "isomorph-rejected",
    }
    return c, best["G"], cert


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------


# compiling copies through vertex 0 into clauses is worth it up to this many maps
CLAUSE_LIMIT = 400_000


class _Constraints:
    """Propagation for the witness DFS.

    Vertex 0 is uncovered iff no copy of the pattern through it has all of
    its triples included.  When the copies are few enough they are indexed
    per triple, so including a triple immediately excludes the last missing
    triple of any copy it nearly completes.  Otherwise the detector is asked
    directly.
    """

    def __init__(self, n, spec, i, d):
        self.n, self.spec, self.d = n, spec, d
        self.full = (1 << comb(n, 3)) - 1
        self.imasks = _iset_masks(n, i)
        self.index = None
        if _copy_count(n, spec) <= CLAUSE_LIMIT:
            index: dict[int, list[int]] = {}
            for mask in _vertex_copy_masks(n, spec, 0):
                for t in _bits(mask):
                    index.setdefault(t, []).append(mask & ~(1 << t))
            self.index = index

    def include(self, inc, exc, tbit):
        """Add one triple; returns the propagated state or ``None``."""
        t = tbit.bit_length() - 1
        inc |= tbit
        if self.index is None:
            if self.spec.covers(ThreeGraph(self.n, inc), 0):
                return None
            return inc, exc
        for rest in self.index.get(t, ()):
            left = rest & ~inc
            if not left:
                return None
            if left & (left - 1) == 0:
                exc |= left
        return inc, exc

    def expand(self, inc, exc):
        """Propagate to a fixpoint.

        Returns ``None`` for a dead node, ``(inc, exc, None)`` when every
        i-set reaches ``d``, else ``(inc, exc, t)`` with the triple to branch on.
        """
        d = self.d
        while True:
            if inc & exc:
                return None
            und = self.full & ~inc & ~exc
            pick, pick_slack, forced = None, None, 0
            for mask in self.imasks:
                have = (inc & mask).bit_count()
                if have >= d:
                    continue
                slack = have + (und & mask).bit_count() - d
                if slack < 0:
                    return None
                if slack == 0:
                    forced |= und & mask
                elif pick is None or slack < pick_slack:
                    pick, pick_slack = mask, slack
            if forced:
                for t in _bits(forced):
                    state = self.include(inc, exc, 1 << t)
                    if state is None:
                        return None
                    inc, exc = state
                continue
            if pick is None:
                return inc, exc, None
            if self.index is None:
                bad = 0
                for t in _bits(und & pick):
                    if self.spec.covers(ThreeGraph(self.n, inc | 1 << t), 0):
                        bad |= 1 << t
                if bad:
                    exc |= bad
                    continue
            return inc, exc, (und & pick) & -(und & pick)


def _witness_dfs(cons: _Constraints, roots, meter):
    """DFS from the given (included, excluded) states, first root first."""
    stack = list(reversed(roots))
    while stack:
        inc, exc = stack.pop()
        meter.tick()
        node = cons.expand(inc, exc)
        if node is None:
            continue
        inc, exc, t = node
        if t is None:
            return inc
        stack.append((inc, exc | t))
        grown = cons.include(inc, exc, t)
        if grown is not None:
            stack.append(grown)
    return None


def _frontier(cons: _Constraints, width):
    """Split the root of the DFS into up to ``width`` subtrees, in DFS order."""
    states = [(0, 0)]
    while 0 < len(states) < width:
        nxt = []
        grew = False
        for inc, exc in states:
            node = cons.expand(inc, exc)
            if node is None:
                continue
            inc, exc, t = node
            if t is None:
                nxt.append((inc, exc))
                continue
            grew = True
            grown = cons.include(inc, exc, t)
            if grown is not None:
                nxt.append(grown)
            nxt.append((inc, exc | t))
        states = nxt
        if not grew:
            break
    return states


def _witness_job(args):
    n, name, i, d, state, budget = args
    cons = _Constraints(n, _spec(name), i, d)
    meter = _Meter(budget)
    try:
        found = _witness_dfs(cons, [state], meter)
    except BudgetExceededError as exc:
        return "budget", None, meter.nodes, exc.progress
    return ("found" if found is not None else "exhausted"), found, meter.nodes, None


def find_witness(
    n: int,
    pattern,
    i: int,
    d: int,
    budget: Budget | None = None,
    workers: int = 1,
) -> SearchOutcome:
    """Search for a 3-graph with ``delta_i >= d`` in which vertex 0 is uncovered.

    Vertex 0 stands for the uncovered vertex: every vertex of ``K_n`` is in
    one orbit, so this loses nothing.  Triples are decided one at a time;
    the i-set with least slack picks the next triple.  A branch dies when
    some i-set can no longer reach ``d`` or when the included triples
    already cover vertex 0 (coverage only grows as triples are added).
    """
    _check_i(i)
    if not 3 <= n <= WITNESS_LIMIT:
        raise InvalidArgument(f"witness search needs 3 <= n <= {WITNESS_LIMIT}, got n={n}")
    if d < 0:
        raise InvalidArgument("d must be non-negative")
    spec = _spec(pattern)
    meter = _Meter(budget)
    stats = SearchStats()
    if d > _max_degree(n, i):
        stats.elapsed = meter.elapsed()
        cert = {"degree_floor": d, "reason": "exceeds the degree of the complete graph"}
        return SearchOutcome(OutcomeKind.EXHAUSTED, certificate=cert, stats=stats)

    found, progress = None, None
    if workers > 1 and isinstance(pattern, str):
        states = _frontier(_Constraints(n, spec, i, d), 4 * workers)
        jobs = [(n, pattern, i, d, s, budget) for s in states]
        over = False
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for status, g, nodes, prog in pool.map(_witness_job, jobs):
                stats.nodes += nodes
                if status == "found" and found is None and not over:
                    found = g
                if status == "budget" and found is None:
                    over, progress = True, prog
        if found is None and over:
            stats.elapsed = meter.elapsed()
            return SearchOutcome(OutcomeKind.BUDGET_EXCEEDED, progress=progress, stats=stats)
    else:
        try:
            found = _witness_dfs(_Constraints(n, spec, i, d), [(0, 0)], meter)
        except BudgetExceededError as exc:
            stats.nodes, stats.elapsed = meter.nodes, meter.elapsed()
            return SearchOutcome(OutcomeKind.BUDGET_EXCEEDED, progress=exc.progress, stats=stats)
        stats.nodes = meter.nodes
    stats.elapsed = meter.elapsed()
    if found is None:
        cert = {"degree_floor": d, "uncovered_vertex": 0, "nodes": stats.nodes}
        return SearchOutcome(OutcomeKind.EXHAUSTED, certificate=cert, stats=stats)
    G = ThreeGraph(n, found)
    if min_degree(G, i) < d or spec.covers(G, 0):
        raise AssertionError("witness failed re-validation")
    return SearchOutcome(OutcomeKind.WITNESS, value=d, graph=G, vertex=0, stats=stats)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def random_threegraph(
    n: int,
    target: tuple[int, int] | None = None,
    seed: int = 0,
    density: float = DEFAULT_DENSITY,
) -> ThreeGraph:
    """Seeded random 3-graph; each triple kept with probability ``density``.

    With ``target = (i, d)`` a repair loop then adds, while some i-set has
    degree below ``d``, the missing triple meeting the most deficient
    i-sets (colex-least among ties).
    """
    if not 0.0 <= density <= 1.0:
        raise InvalidArgument("density must lie in [0, 1]")
    if target is not None:
        i, d = target
        _check_i(i)
        if n < 3 or d > _max_degree(n, i):
            raise InvalidArgument(f"no 3-graph on {n} vertices has delta_{i} >= {d}")
    rng = random.Random(seed)
    bits = 0
    for t in range(comb(n, 3)):
        if rng.random() < density:
            bits |= 1 << t
    if target is None:
        return ThreeGraph(n, bits)
    i, d = target
    table = triples(n)
    if i == 1:
        keys = [((a,), (b,), (c,)) for a, b, c in table]
        deg = {(v,): 0 for v in range(n)}
    else:
        keys = [((a, b), (a, c), (b, c)) for a, b, c in table]
        deg = {p: 0 for p in combinations(range(n), 2)}
    for t in _bits(bits):
        for s in keys[t]:
            deg[s] += 1
    while True:
        short = {s for s, k in deg.items() if k < d}
        if not short:
            break
        best_t, best_hits = -1, 0
        for t, ks in enumerate(keys):
            if bits >> t & 1:
                continue
            hits = (ks[0] in short) + (ks[1] in short) + (ks[2] in short)
            if hits > best_hits:
                best_t, best_hits = t, hits
        bits |= 1 << best_t
        for s in keys[best_t]:
            deg[s] += 1
    return ThreeGraph(n, bits)


# ---------------------------------------------------------------------------
# theorem audits
# ---------------------------------------------------------------------------


def _strictly_above(x: Fraction) -> int:
    return floor(x) + 1


@dataclass(frozen=True)
class TheoremSpec:
    """A degree-sufficiency statement: ``delta_i >= floor(n, k)`` implies the
    conclusion at every vertex."""

    id: str
    claim: str
    i: int
    floor: Callable[[int, int | None], int]
    conclusion: str
    min_n: Callable[[int | None], int]
    needs_k: bool = False
    min_k: int = 0
    assert_min_n: Callable[[int | None], int] | None = None

    def holds_at(self, G: ThreeGraph, u: int) -> bool:
        if self.conclusion == "T1|T2":
            p = covers_T(G, u)
            return p.t1 or p.t2
        if self.conclusion == "T1&T2":
            p = covers_T(G, u)
            return p.t1 and p.t2
        return resolve_pattern(self.conclusion).covers(G, u)


def _t11_floor(n, k):
    return 3 if n >= 11 and (n - 1) % 3 == 0 else 2


def _sk2i_floor(n, k):
    a = Fraction(4 * k * k - 6 * k + 2, n - 1)
    b = k - 2 - Fraction(k * k - n * k, n - 1)
    return _strictly_above(max(a, b))


def _sk2ii_floor(n, k):
    return max(comb(2 * k - 1, 2), comb(n - 1, 2) - comb(n - k, 2)) + 1


THEOREMS: dict[str, TheoremSpec] = {
    t.id: t
    for t in [
        TheoremSpec("thm11", "c_2(n,T) = 1 (n<=10), 2 or 1 by n-1 mod 3 (n>=11)", 2, _t11_floor, "T", lambda k: 5),
        TheoremSpec(
            "thm12ii",
            "delta_1 > n^2/6 + 5n/6 - 3 gives T1 or T2 at every vertex",
            1,
            lambda n, k: _strictly_above(Fraction(n * n, 6) + Fraction(5 * n, 6) - 3),
            "T1|T2",
            lambda k: 5,
        ),
        TheoremSpec(
            "thm12iii",
            "delta_1 > n^2/4 + n/4 - 2 gives T1 and T2 at every vertex",
            1,
            lambda n, k: _strictly_above(Fraction(n * n, 4) + Fraction(n, 4) - 2),
            "T1&T2",
            lambda k: 5,
        ),
        TheoremSpec("thm13", "c_2(n,P_2) = 0", 2, lambda n, k: 1, "P2", lambda k: 5),
        TheoremSpec("thm14", "c_1(n,P_2) = 3", 1, lambda n, k: 4, "P2", lambda k: 8),
        TheoremSpec("thm15", "delta_2 >= 2 gives a P_2 centred at every vertex", 2, lambda n, k: 2, "P2c", lambda k: 5),
        TheoremSpec("s32", "delta_2 >= 2 gives an S_3 covering", 2, lambda n, k: 2, "Sk:3", lambda k: 7),
        TheoremSpec("s3center", "delta_2 >= 3 gives an S_3 centred at every vertex", 2, lambda n, k: 3, "Skc:3", lambda k: 7),
        TheoremSpec(
            "sk2i",
            "c_2(n,S_k) <= max{(4k^2-6k+2)/(n-1), k-2-(k^2-nk)/(n-1)}",
            2,
            _sk2i_floor,
            "Skc",
            lambda k: 2 * k + 1,
            needs_k=True,
            min_k=3,
        ),
        TheoremSpec(
            "sk2ii",
            "c_1(n,S_k) <= max{C(2k-1,2), C(n-1,2)-C(n-k,2)}",
            1,
            _sk2ii_floor,
            "Skc",
            lambda k: 2 * k + 1,
            needs_k=True,
            min_k=3,
        ),
        TheoremSpec("p32exact", "c_2(n,P_3) = 1 (upper direction)", 2, lambda n, k: 2, "P3", lambda k: 8),
        TheoremSpec(
            "p31",
            "c_1(n,P_3) <= n+4",
            1,
            lambda n, k: n + 5,
            "P3",
            lambda k: 8,
            assert_min_n=lambda k: 9,
        ),
        TheoremSpec("p32pos2", "delta_2 >= 3 gives a P_3 with the vertex in position 2", 2, lambda n, k: 3, "P3pos2", lambda k: 8),
        TheoremSpec(
            "pk2i",
            "c_2(n,P_k) <= 2k-2",
            2,
            lambda n, k: 2 * k - 1,
            "Pk",
            lambda k: 2 * k + 1,
            needs_k=True,
            min_k=4,
        ),
        TheoremSpec(
            "pk2ii",
            "c_1(n,P_k) <= C(n-1,2) - C(n-2k+1,2)",
            1,
            lambda n, k: comb(n - 1, 2) - comb(n - 2 * k + 1, 2) + 1,
            "Pk",
            lambda k: 4 * k,
            needs_k=True,
            min_k=4,
        ),
        TheoremSpec("c1p2center", "delta_1 >= n-1 gives a P_2 centred at every vertex", 1, lambda n, k: n - 1, "P2c", lambda k: 5),
    ]
}


@dataclass
class AuditReport:
    theorem: str
    claim: str
    params: dict
    mode: str
    seed: int | None
    samples: int
    asserted: bool
    details: dict = field(default_factory=dict)
    violations: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0 or not self.asserted

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "claim": self.claim,
            "params": self.params,
            "mode": self.mode,
            "seed": self.seed,
            "samples": self.samples,
            "asserted": self.asserted,
            "details": self.details,
            "violations": self.violations,
            "pass": self.passed,
            "counterexamples": self.counterexamples,
        }


MAX_COUNTEREXAMPLES = 5


def _sample_seed(seed: int, j: int) -> int:
    return seed * 1_000_003 + j


def _audit_one(args):
    spec_id, n, k, i, d, conclusion, s, density = args
    G = random_threegraph(n, (i, d), seed=s, density=density)
    th = THEOREMS[spec_id]
    conc = _conclusion(th, k)
    bad = [u for u in range(n) if not conc(G, u)]
    return G, bad


def _conclusion(th: TheoremSpec, k):
    if th.conclusion in ("Skc", "Pk"):
        name = f"{th.conclusion}:{k}"
        return resolve_pattern(name).covers
    return th.holds_at


def audit_theorem(
    theorem_id: str,
    params: dict,
    sample_count: int = 200,
    seed: int = 0,
    exhaustive: bool = False,
    densities: Iterable[float] | None = None,
    workers: int = 1,
) -> AuditReport:
    """Check a degree-sufficiency statement on seeded samples (or on every
    labelled graph when ``exhaustive``) and count vertices where it fails."""
    if theorem_id == "sgBt":
        return sgbt_exhaustive(params.get("n", 7))
    try:
        th = THEOREMS[theorem_id]
    except KeyError:
        raise InvalidArgument(f"unknown theorem {theorem_id!r}") from None
    n = params.get("n")
    k = params.get("k")
    if n is None:
        raise InvalidArgument("audit needs n")
    if th.needs_k:
        if k is None or k < th.min_k:
            raise InvalidArgument(f"{theorem_id} needs k >= {th.min_k}")
    if n < th.min_n(k):
        raise InvalidArgument(f"{theorem_id} needs n >= {th.min_n(k)}")
    if sample_count < 0:
        raise InvalidArgument("sample count must be non-negative")
    d = th.floor(n, k)
    if d > _max_degree(n, th.i):
        raise InvalidArgument(f"floor delta_{th.i} >= {d} is unattainable on {n} vertices")
    asserted = th.assert_min_n is None or n >= th.assert_min_n(k)
    echo = {"n": n} if not th.needs_k else {"n": n, "k": k}
    conc = _conclusion(th, k)
    report = AuditReport(theorem_id, th.claim, echo, "exhaustive" if exhaustive else "sampled", None, 0, asserted)
    report.details = {"i": th.i, "degree_floor": d, "conclusion": th.conclusion if not th.needs_k else f"{th.conclusion}:{k}"}

    def record(G, bad, tag):
        if bad:
            report.violations += len(bad)
            if len(report.counterexamples) < MAX_COUNTEREXAMPLES:
                report.counterexamples.append({tag[0]: tag[1], "vertices": bad, "graph": dumps(G)})

    if exhaustive:
        _check_enum_bounds(n, False)
        gs = _graphs_with_floor(n, th.i, d)
        report.samples = len(gs)
        for g in gs:
            G = ThreeGraph(n, g)
            record(G, [u for u in range(n) if not conc(G, u)], ("bitset", g))
        return report

    dens = tuple(AUDIT_DENSITIES if densities is None else densities)
    if not dens:
        raise InvalidArgument("need at least one density")
    report.seed = seed
    report.samples = sample_count
    report.details["densities"] = list(dens)
    jobs = [
        (theorem_id, n, k, th.i, d, th.conclusion, _sample_seed(seed, j), dens[j % len(dens)])
        for j in range(sample_count)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_audit_one, jobs, chunksize=8))
    else:
        results = map(_audit_one, jobs)
    for j, (G, bad) in enumerate(results):
        record(G, bad, ("sample", j))
    return report


def _graphs_with_floor(n: int, i: int, d: int) -> list[int]:
    """All labelled 3-graphs on ``n <= 6`` vertices with ``delta_i >= d``."""
    total = 1 << comb(n, 3)
    out = []
    masks = _iset_masks(n, i)
    for lo in range(0, total, 1 << 16):
        g = np.arange(lo, min(total, lo + (1 << 16)), dtype=np.uint32)
        ok = np.ones(g.shape, dtype=bool)
        for m in masks:
            ok &= np.bitwise_count(g & np.uint32(m)) >= d
        out.extend(g[ok].tolist())
    return out


# ---------------------------------------------------------------------------
# exhaustive 2-graph checks
# ---------------------------------------------------------------------------


def _matching_masks(pairs, k):
    """Edge masks of every k-matching of ``K_n``, pairs indexed as in ``pairs``."""
    index = {p: j for j, p in enumerate(pairs)}
    out = []

    def rec(start, used, mask, left):
        if left == 0:
            out.append(mask)
            return
        for j in range(start, len(pairs)):
            a, b = pairs[j]
            if used >> a & 1 or used >> b & 1:
                continue
            rec(j + 1, used | 1 << a | 1 << b, mask | 1 << index[(a, b)], left - 1)

    rec(0, 0, 0, k)
    return out


def _two_graph_chunks(n, chunk=1 << 20):
    pairs = list(combinations(range(n), 2))
    total = 1 << len(pairs)
    for lo in range(0, total, chunk):
        yield pairs, np.arange(lo, min(total, lo + chunk), dtype=np.uint32)


def _two_graph(n, pairs, g: int) -> TwoGraph:
    return TwoGraph.from_edges(n, [pairs[j] for j in _bits(g)])


def sgbt_exhaustive(n: int = 7) -> AuditReport:
    """Every 2-graph on ``n`` vertices with minimum degree >= 2 and no
    3-matching must classify as Book or BookMinus."""
    if not 7 <= n <= 8:
        raise InvalidArgument("sgBt check runs at n = 7 (or 8, slowly)")
    pairs = list(combinations(range(n), 2))
    vmask = [sum(1 << j for j, p in enumerate(pairs) if v in p) for v in range(n)]
    m3 = _matching_masks(pairs, 3)
    counts = {c.value: 0 for c in BookClass}
    report = AuditReport("sgBt", "delta >= 2 and no 3-matching: Book or BookMinus", {"n": n}, "exhaustive", None, 0, True)
    for _, g in _two_graph_chunks(n):
        ok = np.ones(g.shape, dtype=bool)
        for m in vmask:
            ok &= np.bitwise_count(g & np.uint32(m)) >= 2
        for m in m3:
            mm = np.uint32(m)
            ok &= (g & mm) != mm
        report.samples += len(g)
        for x in g[ok].tolist():
            H = _two_graph(n, pairs, x)
            try:
                cls = classify_no3matching(H)
            except AssertionError:
                cls = None
            if cls in (BookClass.BOOK, BookClass.BOOK_MINUS):
                counts[cls.value] += 1
            else:
                report.violations += 1
                if len(report.counterexamples) < MAX_COUNTEREXAMPLES:
                    report.counterexamples.append({"edges": H.edge_list()})
    report.details = {"graphs_classified": counts["Book"] + counts["BookMinus"], **counts}
    return report


def erdos_gallai_exhaustive(n: int, k: int) -> dict:
    """Largest edge count over all 2-graphs on ``n`` vertices without a
    ``k``-matching, next to the closed-form bound."""
    if n > 7:
        raise InvalidArgument("exhaustive 2-graph checks stop at n = 7")
    bound = erdos_gallai_bound(n, k)
    best = 0
    for pairs, g in _two_graph_chunks(n):
        free = np.ones(g.shape, dtype=bool)
        for m in _matching_masks(pairs, k):
            mm = np.uint32(m)
            free &= (g & mm) != mm
        if free.any():
            best = max(best, int(np.bitwise_count(g[free]).max()))
    return {"n": n, "k": k, "bound": bound, "max_edges": best, "pass": best <= bound}


# ---------------------------------------------------------------------------
# tasks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactThreshold:
    isomorph_rejection: bool = False


@dataclass(frozen=True)
class WitnessAtDegree:
    d: int


@dataclass(frozen=True)
class Audit:
    theorem_id: str
    sample_count: int = 200
    seed: int = 0


@dataclass(frozen=True)
class SearchTask:
    n: int
    pattern: str
    i: int
    mode: Union[ExactThreshold, WitnessAtDegree, Audit]
    budget: Budget = field(default_factory=Budget)

    def __post_init__(self):
        _check_i(self.i)
        if isinstance(self.mode, ExactThreshold):
            _check_enum_bounds(self.n, self.mode.isomorph_rejection)
        elif isinstance(self.mode, WitnessAtDegree):
            if not 3 <= self.n <= WITNESS_LIMIT:
                raise InvalidArgument(f"witness search needs 3 <= n <= {WITNESS_LIMIT}")
        elif isinstance(self.mode, Audit):
            if self.mode.sample_count <= 0:
                raise InvalidArgument("sample count must be positive")


def run_task(task: SearchTask, workers: int = 1):
    m = task.mode
    if isinstance(m, ExactThreshold):
        return compute_threshold_exact(task.n, task.pattern, task.i, m.isomorph_rejection, task.budget, workers)
    if isinstance(m, WitnessAtDegree):
        return find_witness(task.n, task.pattern, task.i, m.d, task.budget, workers)
    return audit_theorem(m.theorem_id, {"n": task.n}, m.sample_count, m.seed, workers=workers)
