"""Exact c_i(n, F) for small n by full enumeration, cross-checked by witness search.

    python3 scripts/exact_thresholds.py [--n 5 6] [--patterns T P2 ...] [--out results.json]
"""

import argparse
import json
import time

from hypercover.search import OutcomeKind, compute_threshold_exact, find_witness

PATTERNS = ["T", "T1", "T2", "T3", "P2", "P2c", "Sk:2", "Skc:2", "P3", "Sk:3"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[5, 6])
    ap.add_argument("--patterns", nargs="+", default=PATTERNS)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out")
    args = ap.parse_args()

    rows = []
    for n in args.n:
        for name in args.patterns:
            for i in (1, 2):
                t = time.perf_counter()
                out = compute_threshold_exact(n, name, i, workers=args.workers)
                c = out.value
                at = find_witness(n, name, i, c).kind
                above = find_witness(n, name, i, c + 1).kind
                agree = at is OutcomeKind.WITNESS and above is OutcomeKind.EXHAUSTED
                rows.append({"n": n, "pattern": name, "i": i, "value": c, "witness_search_agrees": agree})
                print(f"n={n} {name:6} i={i}  c={c:3}  search agrees: {agree}  ({time.perf_counter() - t:.2f}s)")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
