"""Command-line front end.

    ctxstab run CIRCUIT [--shots N] [--seed S] [--trace] [--backend model|oracle|both] [--format text|jsonl]
    ctxstab demo {pm-square,ghz,shallow} [--seed S]
    ctxstab stats N [--no-timing]
    ctxstab selftest [--seed S]

Exit status: 0 success, 1 circuit parse error, 2 execution error (including a
deterministic model/oracle disagreement under ``--backend both``).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from . import context, oracle
from .checks import time_measurements
from .circuit import Circuit, MeasurementRecord, execute, execute_oracle, parse_circuit, replay_oracle
from .coins import SEED_MASK, CoinSource
from .demos import DEMOS
from .errors import CircuitParseError

SEED_ENV = "CTXSTAB_SEED"
EXIT_OK, EXIT_PARSE, EXIT_EXEC = 0, 1, 2
LANE_CHUNK = 4096
SE_TOLERANCE = 5.0


@dataclass
class RunConfig:
    input: str
    shots: int = 1
    seed: int = 0
    trace: bool = False
    backend: str = "model"
    format: str = "text"


def default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env:
        return int(env, 0) & SEED_MASK
    return int(np.random.SeedSequence().entropy) & SEED_MASK


def _emit_record(rec: MeasurementRecord, fmt: str, out) -> None:
    if fmt == "jsonl":
        out.write(json.dumps(rec.as_dict()) + "\n")
    else:
        out.write(f"{rec.backend} shot={rec.shot} {rec.label} {rec.observable} {rec.outcome}\n")


def _run_model(circuit: Circuit, cfg: RunConfig, out) -> list[MeasurementRecord]:
    records: list[MeasurementRecord] = []
    if cfg.trace:
        for shot in range(cfg.shots):
            def hook(label, snap, shot=shot):
                if cfg.format == "text":
                    out.write(f"# shot={shot} {label:<28} {snap}\n")
            state = context.prepare_canonical(circuit.n, CoinSource.for_shots(cfg.seed, [shot]), trace=hook)
            records += execute(circuit, state, shot=shot)
        return records
    for start in range(0, cfg.shots, LANE_CHUNK):
        shots = range(start, min(cfg.shots, start + LANE_CHUNK))
        state = context.prepare_canonical(circuit.n, CoinSource.for_shots(cfg.seed, shots))
        records += execute(circuit, state, shot=start)
    return records


def _run_oracle(circuit: Circuit, cfg: RunConfig) -> list[MeasurementRecord]:
    records = []
    for shot in range(cfg.shots):
        st = oracle.QuantumState(circuit.n)
        records += execute_oracle(circuit, st, CoinSource.for_shots(cfg.seed, [shot]), shot=shot)
    return records


def _deterministic_mismatches(circuit: Circuit, model: list[MeasurementRecord]) -> int:
    m = len(circuit.measurements)
    if m == 0:
        return 0
    per_shot: dict[int, list[int]] = defaultdict(list)
    for r in model:
        per_shot[r.shot].append(r.outcome)
    bad = 0
    seen: dict[tuple, bool] = {}
    for outcomes in per_shot.values():
        key = tuple(outcomes)
        if key not in seen:
            try:
                replay_oracle(circuit, list(key))
                seen[key] = True
            except ValueError:
                seen[key] = False
        bad += not seen[key]
    return bad


def _compare(model, orc, fmt: str, out) -> None:
    stats: dict[str, list[int]] = {}
    for r in model:
        stats.setdefault(r.label, [0, 0, 0, 0])[0] += r.outcome
        stats[r.label][1] += 1
    for r in orc:
        stats[r.label][2] += r.outcome
        stats[r.label][3] += 1
    for label, (m1, mn, o1, on) in stats.items():
        pm, po = m1 / mn, o1 / on
        pooled = (m1 + o1) / (mn + on)
        se = math.sqrt(pooled * (1 - pooled) * (1 / mn + 1 / on))
        delta = pm - po
        flagged = abs(delta) > SE_TOLERANCE * se if se > 0 else delta != 0
        if fmt == "jsonl":
            row = {"compare": label, "model_freq": pm, "oracle_freq": po, "delta": delta, "se": se, "flagged": flagged}
            out.write(json.dumps(row) + "\n")
        else:
            mark = "FLAG" if flagged else "ok"
            out.write(f"compare {label} model={pm:.4f} oracle={po:.4f} delta={delta:+.4f} se={se:.4f} {mark}\n")


def cmd_run(cfg: RunConfig, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        text = sys.stdin.read() if cfg.input == "-" else open(cfg.input, encoding="utf-8").read()
    except OSError as e:
        err.write(f"error: cannot read {cfg.input}: {e}\n")
        return EXIT_EXEC
    try:
        circuit = parse_circuit(text)
    except CircuitParseError as e:
        err.write(f"error: {cfg.input}:{e.line}:{e.column}: {e.reason}\n")
        return EXIT_PARSE
    if cfg.shots < 1:
        err.write("error: --shots must be >= 1\n")
        return EXIT_EXEC
    if cfg.backend in ("oracle", "both") and circuit.n > oracle.MAX_QUBITS:
        err.write(f"error: oracle backend supports at most {oracle.MAX_QUBITS} qubits\n")
        return EXIT_EXEC

    if cfg.format == "text":
        out.write(f"# seed={cfg.seed} shots={cfg.shots} qubits={circuit.n} backend={cfg.backend}\n")
    model = _run_model(circuit, cfg, out) if cfg.backend in ("model", "both") else []
    orc = _run_oracle(circuit, cfg) if cfg.backend in ("oracle", "both") else []
    for rec in model + orc:
        _emit_record(rec, cfg.format, out)
    if cfg.backend == "both":
        _compare(model, orc, cfg.format, out)
        bad = _deterministic_mismatches(circuit, model)
        if bad:
            err.write(f"error: {bad} shot(s) produced outcomes the oracle rules out\n")
            return EXIT_EXEC
    return EXIT_OK


def cmd_demo(name: str, seed: int, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    demo = DEMOS.get(name)
    if demo is None:
        err.write(f"error: unknown demo {name!r}; choose from {', '.join(DEMOS)}\n")
        return EXIT_EXEC
    lines, ok = demo(seed)
    out.write(f"# seed={seed}\n")
    out.write("\n".join(lines) + "\n")
    out.write(f"result: {'matches' if ok else 'DOES NOT MATCH'} quantum predictions\n")
    return EXIT_OK if ok else EXIT_EXEC


def cmd_stats(n: int, timing: bool = True, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    if n < 1:
        err.write("error: n must be >= 1\n")
        return EXIT_EXEC
    rep = context.stats(context.prepare_canonical(n, CoinSource.from_seed(0)))
    out.write(f"n {rep.n}\ncontext_bits {rep.context_bits}\n")
    out.write(f"storage_bits {rep.storage_bits}\noverhead_bits {rep.overhead_bits}\n")
    if timing:
        sizes = sorted({max(1, n // 2), n, 2 * n})
        times = {}
        for size in sizes:
            times[size] = time_measurements(size)
            out.write(f"timing n={size} measure_s={times[size][0]:.3e} gate_s={times[size][1]:.3e}\n")
        out.write(f"measure_ratio_2n_over_n {times[2 * n][0] / times[n][0]:.2f}\n")
    return EXIT_OK


def cmd_selftest(seed: int, out=None) -> int:
    out = out or sys.stdout
    from .selftest import run_selftest

    ok = True
    for name, passed, detail in run_selftest(seed):
        ok &= passed
        out.write(f"{'PASS' if passed else 'FAIL'} {name}: {detail}\n")
    return EXIT_OK if ok else EXIT_EXEC


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ctxstab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a circuit file")
    run.add_argument("input", help="circuit file, or - for stdin")
    run.add_argument("--shots", type=int, default=1)
    run.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    run.add_argument("--trace", action="store_true")
    run.add_argument("--backend", choices=("model", "oracle", "both"), default="model")
    run.add_argument("--format", choices=("text", "jsonl"), default="text")

    demo = sub.add_parser("demo", help="run a worked example")
    demo.add_argument("name", help="pm-square, ghz or shallow")
    demo.add_argument("--seed", type=lambda s: int(s, 0), default=None)

    stats = sub.add_parser("stats", help="memory accounting and timing")
    stats.add_argument("n", type=int)
    stats.add_argument("--no-timing", dest="timing", action="store_false")

    st = sub.add_parser("selftest", help="run the randomized invariant suite")
    st.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    seed = getattr(args, "seed", None)
    seed = default_seed() if seed is None else seed & SEED_MASK
    if args.command == "run":
        cfg = RunConfig(args.input, args.shots, seed, args.trace, args.backend, args.format)
        return cmd_run(cfg)
    if args.command == "demo":
        return cmd_demo(args.name, seed)
    if args.command == "stats":
        return cmd_stats(args.n, args.timing)
    return cmd_selftest(seed)


if __name__ == "__main__":
    sys.exit(main())
