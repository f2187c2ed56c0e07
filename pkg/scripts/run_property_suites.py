#!/usr/bin/env python3
"""Run all randomized density-inequality suites and print a summary table.

Example:
    python scripts/run_property_suites.py --instances 1000 --max-dim 6
"""

import argparse
import sys
import time

from l2tor.checks import SUITES, run_suite
from l2tor.config import seed_from_env


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=seed_from_env())
    parser.add_argument("--instances", type=int, default=400)
    parser.add_argument("--max-dim", type=int, default=6)
    args = parser.parse_args()

    total_probes = 0
    failures = 0
    print(f"{'suite':<16}{'instances':>10}{'probes':>10}{'violations':>12}{'secs':>8}")
    for suite in sorted(SUITES):
        start = time.time()
        rep = run_suite(suite, seed=args.seed, instances=args.instances,
                        max_dim=args.max_dim)
        elapsed = time.time() - start
        total_probes += rep.probes
        failures += len(rep.violations)
        print(f"{suite:<16}{rep.instances:>10}{rep.probes:>10}"
              f"{len(rep.violations):>12}{elapsed:>8.1f}")
        for v in rep.violations[:5]:
            print(f"    {v}")
    print(f"\ntotal probes: {total_probes}  seed: {args.seed}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
