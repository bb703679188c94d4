"""Per-measurement and per-gate wall time against qubit count."""

import argparse

from ctxstab.checks import time_measurements
from ctxstab.context import context_bits


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("sizes", type=int, nargs="*", default=[125, 250, 500, 1000, 2000, 4000])
    ap.add_argument("--reps", type=int, default=20)
    args = ap.parse_args()
    prev = None
    print(f"{'n':>6} {'context_bits':>12} {'measure_s':>10} {'gate_s':>10} {'ratio':>6}")
    for n in args.sizes:
        m, g = time_measurements(n, reps=args.reps)
        ratio = f"{m / prev:.2f}" if prev else ""
        print(f"{n:>6} {context_bits(n):>12} {m:>10.3e} {g:>10.3e} {ratio:>6}")
        prev = m


if __name__ == "__main__":
    main()
