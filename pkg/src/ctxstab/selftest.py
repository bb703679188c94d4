"""Quick randomized invariant suite behind ``ctxstab selftest``."""

from __future__ import annotations

import itertools

import numpy as np

from . import context, oracle
from .checks import (
    GATE_ARITY,
    conjugate_by_gate,
    differential,
    frequency_ok,
    random_circuit,
    random_pauli,
    soak,
)
from .circuit import Instruction
from .coins import CoinSource
from .pauli import PauliOperator, compose


def _compose_matches_matrices(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    pairs = [
        (PauliOperator(2, x1, z1), PauliOperator(2, x2, z2))
        for x1, z1, x2, z2 in itertools.product(range(4), repeat=4)
    ]
    pairs += [(random_pauli(3, rng, hermitian=False), random_pauli(3, rng, hermitian=False)) for _ in range(200)]
    bad = sum(
        not np.allclose(oracle.pauli_matrix(compose(p, q)), oracle.pauli_matrix(p) @ oracle.pauli_matrix(q))
        for p, q in pairs
    )
    return bad == 0, f"{len(pairs)} pairs, {bad} mismatches"


def _gates_match_oracle() -> tuple[bool, str]:
    bad = total = 0
    for kind, arity in GATE_ARITY.items():
        ins = Instruction(kind, (0, 1)[:arity])
        u = oracle.gate_unitary(kind, ins.qubits, 2)
        for x, z in itertools.product(range(4), repeat=2):
            for phase in (0, 2):
                p = PauliOperator(2, x, z, phase)
                want = u @ oracle.pauli_matrix(p) @ u.conj().T
                bad += not np.allclose(oracle.pauli_matrix(conjugate_by_gate(p, ins)), want)
                total += 1
    return bad == 0, f"{total} conjugations, {bad} mismatches"


def _repeatable(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    state = context.prepare_canonical(4, CoinSource.from_seed(seed))
    bad = 0
    for _ in range(500):
        p = random_pauli(4, rng)
        bad += context.measure(state, p) != context.measure(state, p)
    return bad == 0, f"500 repeated measurements, {bad} changed"


def _born_rule(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    det = mism = buckets = off = 0
    for i in range(10):
        n = int(rng.integers(2, 5))
        res = differential(random_circuit(n, 20, 4, rng), 500, seed + i)
        det += res.deterministic_checks
        mism += res.deterministic_mismatches + res.odd_expectations
        buckets += len(res.random_counts)
        off += sum(not frequency_ok(*t) for t in res.random_counts.values())
    return mism == 0 and off == 0, f"{det} deterministic outcomes ({mism} wrong), {buckets} random ({off} off)"


def run_selftest(seed: int) -> list[tuple[str, bool, str]]:
    seed &= 0xFFFFFFFF
    bad_steps = soak(5, 2000, seed)
    return [
        ("compose-vs-matrix", *_compose_matches_matrices(seed)),
        ("gate-conjugation", *_gates_match_oracle()),
        ("symplectic-soak", bad_steps == 0, f"2000 steps, {bad_steps} invalid"),
        ("repeatability", *_repeatable(seed)),
        ("born-rule", *_born_rule(seed)),
    ]
