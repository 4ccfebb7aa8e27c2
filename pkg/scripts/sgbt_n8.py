"""Long pass of the no-3-matching structure check over all 2^28 graphs on 8 vertices."""

import json
import time

from hypercover.search import sgbt_exhaustive

if __name__ == "__main__":
    t = time.perf_counter()
    r = sgbt_exhaustive(8)
    print(json.dumps(r.to_dict(), indent=2, sort_keys=True))
    print(f"{time.perf_counter() - t:.1f}s, {'pass' if r.passed else 'FAIL'}")
