"""Search for graphs with codegree >= 2 leaving a vertex outside every
generalized triangle, for a range of n.

Exhausted at n means c_2(n, T) <= 1; a Witness means c_2(n, T) >= 2.

    python3 scripts/witness_sweep.py [--from 7] [--to 16] [--seconds 120] [--workers 1]
"""

import argparse
import time

from hypercover.core import min_degree
from hypercover.patterns import resolve_pattern
from hypercover.search import Budget, OutcomeKind, find_witness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--from", dest="lo", type=int, default=7)
    ap.add_argument("--to", dest="hi", type=int, default=16)
    ap.add_argument("--pattern", default="T")
    ap.add_argument("--i", type=int, default=2)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--seconds", type=float, default=120.0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    spec = resolve_pattern(args.pattern)
    for n in range(args.lo, args.hi + 1):
        t = time.perf_counter()
        out = find_witness(n, args.pattern, args.i, args.d, Budget(seconds=args.seconds), args.workers)
        dt = time.perf_counter() - t
        line = f"n={n:2}  {out.kind.value:15} nodes={out.stats.nodes:<8} {dt:7.2f}s"
        if out.kind is OutcomeKind.WITNESS:
            G = out.graph
            assert min_degree(G, args.i) >= args.d and not spec.covers(G, out.vertex)
            line += f"  edges={G.m} uncovered vertex {out.vertex}"
        print(line, flush=True)


if __name__ == "__main__":
    main()
