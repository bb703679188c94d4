"""Circuit IR, the line-oriented text format, and executors for both backends.

Format::

    qubits 3            # header, must come first
    H 0                 # qubit indices are 0-based
    CNOT 0 1
    CZ 1 2
    M z1= +ZII          # optional label, then a full-width signed Pauli string

Pauli strings put qubit 0 leftmost. ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from . import context, oracle
from .errors import CircuitParseError, DimensionError, PauliParseError
from .pauli import PauliOperator, format_pauli, parse_pauli

GATE_ARITY = {"H": 1, "S": 1, "X": 1, "Y": 1, "Z": 1, "CNOT": 2, "CZ": 2}
KINDS = (*GATE_ARITY, "MEASURE")

_MODEL_GATES = {
    "H": context.apply_h,
    "S": context.apply_s,
    "X": context.apply_x,
    "Y": context.apply_y,
    "Z": context.apply_z,
    "CNOT": context.apply_cnot,
    "CZ": context.apply_cz,
}

_TOKEN = re.compile(r"\S+")
_INT = re.compile(r"[0-9]+")
_MEASURE_ARG = re.compile(r"(?:(?P<label>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*)?(?P<pauli>\S+)\s*")


@dataclass(frozen=True)
class Instruction:
    kind: str
    qubits: tuple[int, ...] = ()
    observable: PauliOperator | None = None
    label: str | None = None

    def validate(self, n: int) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown instruction kind {self.kind!r}")
        if self.kind == "MEASURE":
            if self.qubits or self.observable is None:
                raise ValueError("MEASURE takes an observable and no qubits")
            if self.observable.n != n:
                raise DimensionError(f"observable width {self.observable.n} != {n}")
            if self.observable.phase % 2:
                raise ValueError(f"observable {self.observable} is not Hermitian")
            return
        if len(self.qubits) != GATE_ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {GATE_ARITY[self.kind]} qubit(s)")
        if any(not 0 <= q < n for q in self.qubits):
            raise DimensionError(f"{self.kind} qubit out of range for n={n}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} needs distinct qubits")

    def __str__(self) -> str:
        if self.kind == "MEASURE":
            obs = format_pauli(self.observable, explicit_sign=True)
            return f"M {self.label}={obs}" if self.label else f"M {obs}"
        return " ".join([self.kind, *map(str, self.qubits)])


@dataclass(frozen=True)
class Circuit:
    n: int
    instructions: tuple[Instruction, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("circuit needs at least one qubit")
        object.__setattr__(self, "instructions", tuple(self.instructions))
        for ins in self.instructions:
            ins.validate(self.n)

    @property
    def measurements(self) -> list[Instruction]:
        return [i for i in self.instructions if i.kind == "MEASURE"]

    def labels(self) -> list[str]:
        return [m.label or f"m{j}" for j, m in enumerate(self.measurements)]


@dataclass(frozen=True)
class MeasurementRecord:
    label: str
    observable: str
    outcome: int
    shot: int = 0
    backend: str = field(default="model", compare=False)

    def as_dict(self) -> dict:
        return {
            "shot": self.shot,
            "label": self.label,
            "observable": self.observable,
            "outcome": self.outcome,
            "backend": self.backend,
        }


def parse_circuit(text: str) -> Circuit:
    n: int | None = None
    instructions: list[Instruction] = []
    labels: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not toks:
            continue
        word, col = toks[0]
        mnemonic = word.upper()

        def fail(msg: str, column: int = col) -> CircuitParseError:
            return CircuitParseError(msg, lineno, column)

        if mnemonic == "QUBITS":
            if n is not None:
                raise fail("duplicate 'qubits' header")
            if len(toks) != 2 or not _INT.fullmatch(toks[1][0]) or int(toks[1][0]) < 1:
                raise fail("expected 'qubits <n>' with n >= 1", toks[1][1] if len(toks) > 1 else col)
            n = int(toks[1][0])
            continue
        if n is None:
            raise fail("missing 'qubits <n>' header before first instruction")

        if mnemonic in ("M", "MEASURE"):
            rest_col = toks[1][1] if len(toks) > 1 else len(line) + 1
            arg = line[rest_col - 1:]
            mm = _MEASURE_ARG.fullmatch(arg)
            if len(toks) < 2 or mm is None:
                raise fail("expected 'M [label=] <pauli>'", rest_col)
            label = mm.group("label")
            if label is not None:
                if label in labels:
                    raise fail(f"duplicate measurement label {label!r}", rest_col)
                labels.add(label)
            pcol = rest_col + mm.start("pauli")
            try:
                obs = parse_pauli(mm.group("pauli"), n)
            except PauliParseError as e:
                raise fail(f"malformed Pauli string: {e}", pcol + e.position) from None
            instructions.append(Instruction("MEASURE", (), obs, label))
            continue

        arity = GATE_ARITY.get(mnemonic)
        if arity is None:
            raise fail(f"unknown mnemonic {word!r}")
        args = toks[1:]
        if len(args) != arity:
            raise fail(f"{mnemonic} takes {arity} qubit argument(s), got {len(args)}")
        qubits = []
        for tok, tcol in args:
            if not _INT.fullmatch(tok):
                raise fail(f"qubit index must be a non-negative integer, got {tok!r}", tcol)
            q = int(tok)
            if q >= n:
                raise fail(f"qubit {q} out of range for {n} qubits", tcol)
            if q in qubits:
                raise fail(f"duplicate qubit {q} in {mnemonic}", tcol)
            qubits.append(q)
        instructions.append(Instruction(mnemonic, tuple(qubits)))
    if n is None:
        raise CircuitParseError("missing 'qubits <n>' header", max(1, len(text.splitlines())), 1)
    return Circuit(n, tuple(instructions))


def format_circuit(circuit: Circuit) -> str:
    return "\n".join([f"qubits {circuit.n}", *map(str, circuit.instructions)]) + "\n"


def execute(circuit: Circuit, state: context.OnticState, shot: int = 0) -> list[MeasurementRecord]:
    """Run ``circuit`` on ``state``.

    Records come back in measurement order. A multi-lane state yields one
    record set per lane, lane ``j`` reported as shot ``shot + j``, ordered by
    shot first.
    """
    if circuit.n != state.n:
        raise DimensionError(f"circuit width {circuit.n} != state width {state.n}")
    labels = circuit.labels()
    outcomes: list[tuple[str, str, np.ndarray]] = []
    for ins in circuit.instructions:
        if ins.kind == "MEASURE":
            v = context.measure_lanes(state, ins.observable)
            outcomes.append((labels[len(outcomes)], format_pauli(ins.observable, explicit_sign=True), v))
        else:
            _MODEL_GATES[ins.kind](state, *ins.qubits)
    return [
        MeasurementRecord(label, obs, int(v[lane]), shot + lane)
        for lane in range(state.lanes)
        for label, obs, v in outcomes
    ]


def execute_oracle(circuit: Circuit, state: oracle.QuantumState, rng, shot: int = 0) -> list[MeasurementRecord]:
    if circuit.n != state.n:
        raise DimensionError(f"circuit width {circuit.n} != state width {state.n}")
    labels = circuit.labels()
    records = []
    for ins in circuit.instructions:
        if ins.kind == "MEASURE":
            bit = oracle.oracle_measure(state, ins.observable, rng)
            records.append(
                MeasurementRecord(
                    labels[len(records)], format_pauli(ins.observable, explicit_sign=True), bit, shot, "oracle"
                )
            )
        else:
            oracle.oracle_apply(state, ins)
    return records


def replay_oracle(circuit: Circuit, outcomes: list[int]) -> list[float]:
    """Oracle expectation of each measurement, post-selecting on the given outcomes.

    Raises ValueError if some outcome is impossible under quantum mechanics.
    """
    st = oracle.QuantumState(circuit.n)
    expectations = []
    j = 0
    for ins in circuit.instructions:
        if ins.kind == "MEASURE":
            expectations.append(oracle.pauli_expectation(st, ins.observable))
            oracle.project(st, ins.observable, outcomes[j])
            j += 1
        else:
            oracle.oracle_apply(st, ins)
    return expectations
