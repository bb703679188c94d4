"""Randomized workloads and model-vs-oracle comparisons.

Shared by the ``selftest`` command, the experiment scripts and the test suite.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from . import context
from .circuit import GATE_ARITY, Circuit, Instruction, execute, replay_oracle
from .coins import CoinSource
from .pauli import PauliOperator

GATE_KINDS = tuple(GATE_ARITY)


def _random_bits(n: int, rng: np.random.Generator) -> int:
    if n <= 62:
        return int(rng.integers(0, 1 << n))
    b = rng.integers(0, 2, size=n, dtype=np.uint8)
    return int.from_bytes(np.packbits(b, bitorder="little").tobytes(), "little")


def random_pauli(n: int, rng: np.random.Generator, hermitian: bool = True, nontrivial: bool = True) -> PauliOperator:
    while True:
        x = _random_bits(n, rng)
        z = _random_bits(n, rng)
        if x or z or not nontrivial:
            break
    phase = 2 * int(rng.integers(0, 2)) if hermitian else int(rng.integers(0, 4))
    return PauliOperator(n, x, z, phase)


def random_dense_pauli(n: int, rng: np.random.Generator) -> PauliOperator:
    """Random Hermitian Pauli for large n (bits drawn in bulk)."""
    x, z = _random_bits(max(n, 63), rng), _random_bits(max(n, 63), rng)
    mask = (1 << n) - 1
    x, z = x & mask, z & mask
    if x == 0 and z == 0:
        z = 1
    return PauliOperator(n, x, z, 2 * int(rng.integers(0, 2)))


def random_gate(n: int, rng: np.random.Generator) -> Instruction:
    kinds = GATE_KINDS if n > 1 else tuple(k for k in GATE_KINDS if GATE_ARITY[k] == 1)
    kind = kinds[int(rng.integers(0, len(kinds)))]
    qubits = tuple(int(q) for q in rng.choice(n, size=GATE_ARITY[kind], replace=False))
    return Instruction(kind, qubits)


def random_circuit(n: int, n_gates: int, n_meas: int, rng: np.random.Generator) -> Circuit:
    """Random Clifford gates with ``n_meas`` random Pauli measurements interleaved."""
    items = [random_gate(n, rng) for _ in range(n_gates)]
    for _ in range(n_meas):
        pos = int(rng.integers(0, len(items) + 1))
        items.insert(pos, Instruction("MEASURE", (), random_pauli(n, rng)))
    return Circuit(n, tuple(items))


def apply_instruction(state: context.OnticState, ins: Instruction):
    if ins.kind == "MEASURE":
        return context.measure_lanes(state, ins.observable)
    getattr(context, f"apply_{ins.kind.lower()}")(state, *ins.qubits)
    return None


@dataclass
class DiffResult:
    """Per-measurement tallies from one circuit run over many lanes."""

    deterministic_checks: int = 0
    deterministic_mismatches: int = 0
    # measurement index -> [ones, total] over lanes where the oracle expectation was 0
    random_counts: dict[int, list[int]] = field(default_factory=lambda: defaultdict(lambda: [0, 0]))
    odd_expectations: int = 0


def differential(circuit: Circuit, lanes: int, seed: int, result: DiffResult | None = None) -> DiffResult:
    """Run the model over ``lanes`` shots and score every outcome against the oracle.

    The oracle is replayed post-selected on each distinct outcome history, so
    each expectation is conditioned on exactly what the model reported before.
    """
    res = result if result is not None else DiffResult()
    state = context.prepare_canonical(circuit.n, CoinSource.for_shots(seed, range(lanes)))
    records = execute(circuit, state)
    m = len(circuit.measurements)
    if m == 0:
        return res
    outcomes = np.array([r.outcome for r in records], dtype=np.uint8).reshape(lanes, m)
    histories, counts = np.unique(outcomes, axis=0, return_counts=True)
    for hist, count in zip(histories, counts):
        try:
            exps = replay_oracle(circuit, hist.tolist())
        except ValueError:
            res.deterministic_mismatches += int(count)
            continue
        for j, e in enumerate(exps):
            if abs(abs(e) - 1) < 1e-9:
                res.deterministic_checks += int(count)
                if int(hist[j]) != (0 if e > 0 else 1):
                    res.deterministic_mismatches += int(count)
            elif abs(e) < 1e-9:
                tally = res.random_counts[j]
                tally[0] += int(hist[j]) * int(count)
                tally[1] += int(count)
            else:
                res.odd_expectations += int(count)
    return res


def frequency_ok(ones: int, total: int, k_se: float = 5.0) -> bool:
    se = np.sqrt(0.25 / total)
    return abs(ones / total - 0.5) <= k_se * se


def time_measurements(n: int, reps: int = 20, seed: int = 0) -> tuple[float, float]:
    """Median seconds per measurement and per gate on a scrambled n-qubit state."""
    rng = np.random.default_rng(seed)
    state = context.prepare_canonical(n, CoinSource.from_seed(seed))
    for _ in range(5):
        context.measure(state, random_dense_pauli(n, rng))
    paulis = [random_dense_pauli(n, rng) for _ in range(reps)]
    mtimes = []
    for p in paulis:
        t0 = time.perf_counter()
        context.measure(state, p)
        mtimes.append(time.perf_counter() - t0)
    gtimes = []
    for _ in range(reps):
        a, b = (int(q) for q in rng.choice(n, size=2, replace=False)) if n > 1 else (0, 0)
        t0 = time.perf_counter()
        context.apply_h(state, a)
        context.apply_s(state, a)
        if n > 1:
            context.apply_cnot(state, a, b)
        gtimes.append((time.perf_counter() - t0) / (3 if n > 1 else 2))
    return float(np.median(mtimes)), float(np.median(gtimes))


def conjugate_by_gate(p: PauliOperator, ins: Instruction) -> PauliOperator:
    """The model's coordinate update of a single Hermitian Pauli under one gate."""
    state = context.OnticState(p.n, CoinSource.from_seed(0))
    state.set_row(0, p)
    apply_instruction(state, ins)
    return state.row(0)


def soak(n: int, steps: int, seed: int, measure_prob: float = 0.4) -> int:
    """Random gates and measurements; returns the number of steps after which the basis was invalid."""
    rng = np.random.default_rng(seed)
    state = context.prepare_canonical(n, CoinSource.from_seed(seed))
    bad = 0
    for _ in range(steps):
        if rng.random() < measure_prob:
            context.measure(state, random_pauli(n, rng))
        else:
            apply_instruction(state, random_gate(n, rng))
        bad += not context.check_symplectic(state)
    return bad
