#!/usr/bin/env python3
"""Run all five canned demo scenarios through the CLI entry point."""

import sys

from density_lab.cli import main

DEMOS = ["totik", "accumulation", "erdos-sarkozy", "hegyvari", "theorem3"]


if __name__ == "__main__":
    failures = 0
    for name in DEMOS:
        print("=" * 72)
        print(f"demo: {name}")
        print("=" * 72)
        code = main(["demo", name])
        if code != 0:
            failures += 1
            print(f"demo {name} exited with {code}", file=sys.stderr)
    sys.exit(1 if failures else 0)
