#!/usr/bin/env python3
"""Exhaustive brute-force oracle sweep with timing, one line per group.

Every subset of every abelian group of order <= CAP is checked: the inf-sup
over all nonempty (C, V) pairs must equal |A|/|G| exactly.
"""

import argparse
import sys
import time

from density_lab import all_finite_abelian_up_to, oracle_counting_sweep

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--cap", type=int, default=8)
    args = ap.parse_args()
    failures = 0
    t0 = time.time()
    for group in all_finite_abelian_up_to(args.cap):
        t = time.time()
        mismatches, size = oracle_counting_sweep(group)
        failures += len(mismatches)
        print(
            f"order {group.order:>2} moduli {str(group.moduli):<12} "
            f"{size:>4} subsets  {len(mismatches)} mismatches  {time.time() - t:.2f}s"
        )
    print(f"total {time.time() - t0:.1f}s, {failures} mismatches")
    sys.exit(1 if failures else 0)
