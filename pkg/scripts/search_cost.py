"""Model counts and search time as the world bound grows.

    python scripts/search_cost.py
"""

import time

from stkripke.consequence import Bound, Mode, Query, check
from stkripke.model import ModelKind
from stkripke.semantics import parse_sequent

QUERY = parse_sequent("a, ~a => b")

for kind in (ModelKind.INTUITIONISTIC, ModelKind.MINIMAL):
    for n in range(1, 5):
        t = time.perf_counter()
        v = check(Query(kind, Mode.ST, QUERY, Bound(n)))
        dt = time.perf_counter() - t
        print(f"{kind.label:15s} max_worlds={n}  {v.outcome.value:18s} models={v.models_checked:>7d}  {dt * 1000:7.1f} ms")
