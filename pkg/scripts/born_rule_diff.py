"""Differential run of random stabilizer circuits against the state-vector oracle."""

import argparse
import time

import numpy as np

from ctxstab.checks import DiffResult, differential, frequency_ok, random_circuit


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--circuits", type=int, default=50)
    ap.add_argument("--lanes", type=int, default=2000)
    ap.add_argument("--max-qubits", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    t0 = time.perf_counter()
    det = bad = buckets = flagged = 0
    worst = 0.0
    for i in range(args.circuits):
        n = int(rng.integers(2, args.max_qubits + 1))
        circ = random_circuit(n, int(rng.integers(0, 41)), int(rng.integers(1, 9)), rng)
        res = differential(circ, args.lanes, seed=args.seed * 10_000 + i, result=DiffResult())
        det += res.deterministic_checks
        bad += res.deterministic_mismatches
        for ones, total in res.random_counts.values():
            buckets += 1
            flagged += not frequency_ok(ones, total)
            worst = max(worst, abs(ones / total - 0.5) / np.sqrt(0.25 / total))
    print(f"circuits {args.circuits} lanes {args.lanes}")
    print(f"deterministic outcomes {det} mismatched {bad}")
    print(f"random measurements {buckets} beyond 5 SE {flagged} worst z {worst:.2f}")
    print(f"elapsed {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
