#!/usr/bin/env python3
"""Grid-verify the closed-form dimension deltas against the trace pipeline
and tally how the sign/vanishing predicates decide each case.

Prints a breakdown by case tag and by zero reason, then a verdict line.
Nonzero exit if any closed form disagrees with the trace computation or any
predicate verdict is contradicted by the exact value.
"""
from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from dataclasses import dataclass

from altrace import signs, trace
from altrace.arith import factor, is_prime


@dataclass(frozen=True)
class SweepConfig:
    k_lo: int = 2
    k_hi: int = 20
    qr_max: int = 200
    m_max: int = 120

    def prime_powers(self):
        for n in range(2, self.qr_max + 1):
            fs = factor(n).factors
            if len(fs) == 1:
                yield fs[0]


def sweep(cfg: SweepConfig) -> int:
    tags = Counter()
    reasons = Counter()
    checked = mismatches = 0
    t0 = time.perf_counter()
    for q, r in cfg.prime_powers():
        for m in range(1, cfg.m_max + 1):
            if m % q == 0:
                continue
            for k in range(cfg.k_lo, cfg.k_hi + 1, 2):
                checked += 1
                d = signs.delta(k, q, r, m)
                if d != trace.t_new(k, q, r, m, 1):
                    mismatches += 1
                    print("two-path mismatch at k=%d q=%d r=%d M=%d" % (k, q, r, m))
                    continue
                res = signs.equidistribution_predicate(k, q, r, m)
                if not res.covered:
                    tags["(uncovered)"] += 1
                    continue
                tags[res.case_tag] += 1
                if res.predicted_sign == 0:
                    reasons[res.zero_reason] += 1
                    if d != 0:
                        mismatches += 1
                        print("missed nonzero at k=%d q=%d r=%d M=%d" % (k, q, r, m))
                elif res.predicted_sign is not None:
                    reasons["(signed: %+d)" % res.predicted_sign] += 1
                    if d == 0 or (d > 0) != (res.predicted_sign > 0):
                        mismatches += 1
                        print("wrong sign at k=%d q=%d r=%d M=%d" % (k, q, r, m))
                else:
                    reasons["(no claim)"] += 1

    print("\ncase tags:")
    for tag, n in tags.most_common():
        print("  %-28s %7d" % (tag, n))
    print("verdicts:")
    for reason, n in reasons.most_common():
        print("  %-28s %7d" % (reason, n))
    print(
        "\n%d tuples checked, %d mismatches, %.1fs"
        % (checked, mismatches, time.perf_counter() - t0)
    )
    return 1 if mismatches else 0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-range", type=int, nargs=2, default=(2, 20), metavar=("LO", "HI"))
    ap.add_argument("--qr-max", type=int, default=200)
    ap.add_argument("--M-max", type=int, default=120)
    args = ap.parse_args()
    if args.k_range[0] % 2 or args.k_range[1] % 2:
        ap.error("weights must be even")
    cfg = SweepConfig(args.k_range[0], args.k_range[1], args.qr_max, args.M_max)
    return sweep(cfg)


if __name__ == "__main__":
    sys.exit(main())
