"""Dense state-vector reference simulator, used as ground truth at small n.

Amplitude index bit ``n-1-k`` is qubit ``k``, so qubit 0 is the most
significant (leftmost) tensor factor, matching the Pauli text order.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, InvalidGateError, InvalidObservableError
from .pauli import PauliOperator, is_hermitian

MAX_QUBITS = 12
NORM_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.diag([1, 1j])
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)

GATE_MATRICES = {"H": H, "S": S, "X": X, "Y": Y, "Z": Z, "CNOT": CNOT, "CZ": CZ}
_LETTER_MATRIX = {"I": I2, "X": X, "Y": Y, "Z": Z}


class QuantumState:
    def __init__(self, n: int, cap: int = MAX_QUBITS):
        if not 1 <= n <= cap:
            raise DimensionError(f"oracle supports 1..{cap} qubits, got {n}")
        self.n = n
        self.amps = np.zeros(2**n, dtype=complex)
        self.amps[0] = 1.0

    @classmethod
    def from_amplitudes(cls, amps: np.ndarray, cap: int = MAX_QUBITS) -> QuantumState:
        n = int(np.log2(len(amps)))
        if 2**n != len(amps):
            raise DimensionError("amplitude vector length is not a power of two")
        st = cls(n, cap)
        st.amps = np.asarray(amps, dtype=complex).copy()
        return st

    def copy(self) -> QuantumState:
        return QuantumState.from_amplitudes(self.amps, cap=max(self.n, MAX_QUBITS))

    def norm(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)


def _index_mask(n: int, packed: int) -> int:
    return sum(1 << (n - 1 - k) for k in range(n) if (packed >> k) & 1)


def pauli_matrix(p: PauliOperator) -> np.ndarray:
    """Dense 2^n x 2^n matrix of ``p``, built by Kronecker products."""
    out = np.array([[1.0 + 0j]])
    for k in range(p.n):
        out = np.kron(out, _LETTER_MATRIX[p.letter(k)])
    return (1j) ** p.phase * out


def apply_pauli_vector(p: PauliOperator, amps: np.ndarray) -> np.ndarray:
    """P|psi> without forming the matrix: P|b> = i^(p+|x&z|) (-1)^|z&b| |b ^ x>."""
    n = p.n
    idx = np.arange(len(amps))
    xm, zm = _index_mask(n, p.x), _index_mask(n, p.z)
    signs = 1 - 2 * (np.bitwise_count(idx & zm) & 1).astype(np.int64)
    out = np.empty_like(amps)
    out[idx ^ xm] = signs * amps
    return (1j) ** ((p.phase + (p.x & p.z).bit_count()) % 4) * out


def gate_unitary(kind: str, qubits, n: int) -> np.ndarray:
    """Full 2^n unitary of a gate (test helper; the simulator never builds it)."""
    u = np.eye(2**n, dtype=complex)
    st = QuantumState(n, cap=max(n, MAX_QUBITS))
    for col in range(2**n):
        st.amps = u[:, col].copy()
        apply_gate(st, kind, qubits)
        u[:, col] = st.amps
    return u


def apply_gate(state: QuantumState, kind: str, qubits) -> None:
    mat = GATE_MATRICES.get(kind)
    if mat is None:
        raise InvalidGateError(f"unknown gate {kind!r}")
    qubits = tuple(qubits)
    arity = 1 if mat.shape == (2, 2) else 2
    if len(qubits) != arity:
        raise InvalidGateError(f"{kind} takes {arity} qubit(s), got {len(qubits)}")
    if any(not 0 <= q < state.n for q in qubits):
        raise DimensionError(f"qubit index out of range for n={state.n}: {qubits}")
    if len(set(qubits)) != len(qubits):
        raise InvalidGateError(f"{kind} needs distinct qubits, got {qubits}")
    psi = state.amps.reshape([2] * state.n)
    psi = np.moveaxis(psi, qubits, range(arity))
    shape = psi.shape
    psi = (mat @ psi.reshape(2**arity, -1)).reshape(shape)
    state.amps = np.moveaxis(psi, range(arity), qubits).reshape(-1)


def oracle_apply(state: QuantumState, instruction) -> None:
    """Apply a gate instruction (anything with ``kind`` and ``qubits``)."""
    if instruction.kind == "MEASURE":
        raise InvalidGateError("oracle_apply takes gates; use oracle_measure for MEASURE")
    apply_gate(state, instruction.kind, instruction.qubits)


def _check(state: QuantumState, p: PauliOperator) -> None:
    if p.n != state.n:
        raise DimensionError(f"observable width {p.n} != state width {state.n}")
    if not is_hermitian(p):
        raise InvalidObservableError(f"observable {p} is not Hermitian")


def pauli_expectation(state: QuantumState, p: PauliOperator) -> float:
    _check(state, p)
    return float(np.vdot(state.amps, apply_pauli_vector(p, state.amps)).real)


def outcome_probability(state: QuantumState, p: PauliOperator, bit: int) -> float:
    """Born probability of eigenvalue (-1)^bit."""
    e = pauli_expectation(state, p)
    return (1 + e) / 2 if bit == 0 else (1 - e) / 2


def project(state: QuantumState, p: PauliOperator, bit: int) -> None:
    """Collapse onto the (-1)^bit eigenspace of ``p`` and renormalise."""
    _check(state, p)
    sgn = 1 - 2 * bit
    amps = (state.amps + sgn * apply_pauli_vector(p, state.amps)) / 2
    norm = np.sqrt(np.vdot(amps, amps).real)
    if norm < 1e-12:
        raise ValueError(f"outcome {bit} of {p} has probability zero")
    state.amps = amps / norm


def oracle_measure(state: QuantumState, p: PauliOperator, rng) -> int:
    """Sample an outcome with Born statistics and collapse.

    Stabilizer states only ever give probabilities 0, 1/2 or 1; the 1/2 case
    consumes one fair coin from ``rng`` so the oracle draws like the model does.
    """
    p0 = outcome_probability(state, p, 0)
    if p0 > 1 - 1e-9:
        bit = 0
    elif p0 < 1e-9:
        bit = 1
    elif abs(p0 - 0.5) < 1e-9:
        bit = int(rng.coins()[0])
    else:
        bit = int(rng.uniform() >= p0)
    project(state, p, bit)
    return bit


def stabilizer_state(generators, cap: int = MAX_QUBITS) -> QuantumState:
    """The unique state fixed by n independent commuting signed generators."""
    gens = list(generators)
    n = gens[0].n
    st = QuantumState(n, cap)
    rng = np.random.default_rng(12345)
    st.amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    st.amps /= np.linalg.norm(st.amps)
    for g in gens:
        project(st, g, 0)
    return st


def fidelity(a: QuantumState, b: QuantumState) -> float:
    return float(abs(np.vdot(a.amps, b.amps)) ** 2)
