#!/usr/bin/env python3
"""Sweep the boundary anomaly of the built-in conformal families.

Prints per-parameter coefficients for dimension 2 and 3 next to the closed
forms they should reproduce (constant -1/(4 pi) in dimension 2, the
curvature multiple -(1 + u)/(4 pi) in dimension 3).
"""

import argparse
import math
import sys

import numpy as np

from l2tor.anomaly import PRESET_FAMILIES, anomaly_coefficients, mean_curvature


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--u-max", type=float, default=1.0)
    parser.add_argument("--steps", type=int, default=11)
    args = parser.parse_args()

    us = np.linspace(0.0, args.u_max, args.steps)
    print(f"{'u':>6}{'dim2 sum':>16}{'dim3 sum':>16}{'-(1+u)/4pi':>16}{'k(u)':>10}")
    worst = 0.0
    for u in us:
        d2 = anomaly_coefficients(PRESET_FAMILIES[2], float(u)).alternating_sum
        d3 = anomaly_coefficients(PRESET_FAMILIES[3], float(u)).alternating_sum
        target = -(1.0 + u) / (4.0 * math.pi)
        worst = max(worst, abs(d3 - target))
        print(f"{u:>6.2f}{d2:>16.10f}{d3:>16.10f}{target:>16.10f}"
              f"{mean_curvature(PRESET_FAMILIES[3], float(u)):>10.4f}")
    print(f"\nmax |dim3 - closed form|: {worst:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
