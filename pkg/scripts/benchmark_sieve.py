#!/usr/bin/env python3
"""Time the class-number table build and the per-call cost of the three
lookups that dominate scans: hurwitz12_ext, ht12, and t_new_level.

Useful when picking --sieve-bound for a long scan: the table build is the
one-time cost, the query rows are the marginal cost once it is warm.
"""
from __future__ import annotations

import argparse
import random
import time

from altrace import classnum, trace


def time_build(bound: int) -> float:
    # get_table installs the table so the query loops below actually hit it;
    # with ascending bounds each call is a genuine rebuild.
    t0 = time.perf_counter()
    classnum.get_table(bound)
    return time.perf_counter() - t0


def time_queries(bound: int, n: int, rng: random.Random) -> dict[str, float]:
    discs = []
    while len(discs) < n:
        d = -rng.randrange(3, bound)
        if d % 4 in (0, 1):
            discs.append(d)
    out = {}

    t0 = time.perf_counter()
    for d in discs:
        classnum.hurwitz12_ext(d)
    out["hurwitz12_ext"] = (time.perf_counter() - t0) / n

    t0 = time.perf_counter()
    for d in discs:
        classnum.ht12(rng.randrange(1, 50), d)
    out["ht12"] = (time.perf_counter() - t0) / n

    levels = [m for m in range(100, 2000) if m % 7][: n // 10 or 1]
    t0 = time.perf_counter()
    for m in levels:
        trace.t_new_level(4, m, 7)
    out["t_new_level(k=4, ell=7)"] = (time.perf_counter() - t0) / len(levels)
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bounds", type=int, nargs="+", default=[10**5, 10**6, 4 * 10**6])
    ap.add_argument("--queries", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=1729)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print("%12s %10s %14s %14s %22s" % ("bound", "build", "hurwitz12_ext", "ht12", "t_new_level"))
    for bound in sorted(args.bounds):
        built = time_build(bound)
        q = time_queries(bound, args.queries, rng)
        print(
            "%12d %9.2fs %12.2fus %12.2fus %20.2fus"
            % (
                bound,
                built,
                1e6 * q["hurwitz12_ext"],
                1e6 * q["ht12"],
                1e6 * q["t_new_level(k=4, ell=7)"],
            )
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
