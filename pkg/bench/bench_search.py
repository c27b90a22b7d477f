"""Compare the compiled search kernel with the pure Python fallback.

Two workloads, each run with both implementations on identical inputs:

* ``functors``: every functor between every ordered pair of small
  categories from the corpus (the map search behind hom objects of Cat).
* ``tables``: associative completions of composition tables, the
  enumeration behind the frozen category corpus.

Results are checked to agree before any time is reported.

    python bench/bench_search.py [--repeat 3] [--max-morphisms 5] [--json out.json]
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time

from weakadj import kernel
from weakadj.base import search_maps
from weakadj.corpus import _tables_for_profile, corpus_categories
from weakadj.errors import generous


def _best(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def functor_workload(max_morphisms):
    cats = corpus_categories(2, max_morphisms)

    def run():
        with generous(64):
            return [len(search_maps(x, y)) for x, y in itertools.product(cats, repeat=2)]
    return f"functors between {len(cats)} categories (<= {max_morphisms} morphisms)", run


def table_workload(max_morphisms, impl):
    profiles = [(1, {(0, 0): n}) for n in range(2, max_morphisms + 1)]
    profiles.append((2, {(0, 0): 2, (0, 1): 1, (1, 0): 1, (1, 1): 2}))

    def run():
        return [_tables_for_profile(k, sizes, impl) for k, sizes in profiles]
    return f"composition tables for {len(profiles)} size profiles", run


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--max-morphisms", type=int, default=5)
    p.add_argument("--json", help="also write the results here")
    a = p.parse_args(argv)
    if kernel.IMPLEMENTATION != "cython":
        print("compiled kernel not available; nothing to compare", file=sys.stderr)
        return 1
    rows = []
    saved = kernel.IMPLEMENTATION
    try:
        timings = {}
        for impl in ("cython", "python"):
            kernel.IMPLEMENTATION = impl
            label, fn = functor_workload(a.max_morphisms)
            timings[impl] = _best(fn, a.repeat)
        if timings["cython"][1] != timings["python"][1]:
            raise SystemExit("functor counts disagree between implementations")
        rows.append((label, sum(timings["cython"][1]), timings["cython"][0], timings["python"][0]))
        timings = {}
        for impl in ("cython", "python"):
            label, fn = table_workload(a.max_morphisms, impl)
            timings[impl] = _best(fn, a.repeat)
        if timings["cython"][1] != timings["python"][1]:
            raise SystemExit("table enumerations disagree between implementations")
        found = sum(len(tables) for tables, _ in timings["cython"][1])
        rows.append((label, found, timings["cython"][0], timings["python"][0]))
    finally:
        kernel.IMPLEMENTATION = saved
    print(f"{'workload':58} {'results':>8} {'cython s':>9} {'python s':>9} {'speedup':>8}")
    for label, n, tc, tp in rows:
        print(f"{label:58} {n:>8} {tc:>9.3f} {tp:>9.3f} {tp / tc:>7.1f}x")
    if a.json:
        with open(a.json, "w") as fh:
            json.dump([{"workload": label, "results": n, "cython_s": round(tc, 4),
                        "python_s": round(tp, 4)} for label, n, tc, tp in rows],
                      fh, indent=2, sort_keys=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
