import numpy as np
import pytest

from ctxstab.checks import random_circuit
from ctxstab.circuit import Instruction, parse_circuit
from ctxstab.coins import CoinSource
from ctxstab.demos import SHALLOW
from ctxstab.errors import DimensionError, InvalidGateError, InvalidObservableError
from ctxstab.oracle import (
    CZ,
    QuantumState,
    apply_pauli_vector,
    gate_unitary,
    oracle_apply,
    oracle_measure,
    pauli_expectation,
    pauli_matrix,
    project,
    stabilizer_state,
)
from ctxstab.pauli import PauliOperator, parse_pauli


def ghz():
    return stabilizer_state([parse_pauli(g) for g in ("-XYY", "-YXY", "-YYX")])


class TestGates:
    def test_hadamard(self):
        st = QuantumState(1)
        oracle_apply(st, Instruction("H", (0,)))
        assert np.allclose(st.amps, [1 / np.sqrt(2), 1 / np.sqrt(2)])

    def test_cz_matrix(self):
        assert np.allclose(gate_unitary("CZ", (0, 1), 2), CZ)

    def test_cnot_control_is_left_qubit(self):
        st = QuantumState(2)
        oracle_apply(st, Instruction("X", (0,)))
        oracle_apply(st, Instruction("CNOT", (0, 1)))
        assert pauli_expectation(st, parse_pauli("ZZ")) == pytest.approx(1)
        assert pauli_expectation(st, parse_pauli("IZ")) == pytest.approx(-1)

    def test_shallow_prefix_stabilized_by_zxx(self):
        st = QuantumState(3)
        for ins in parse_circuit(SHALLOW).instructions:
            if ins.kind != "MEASURE":
                oracle_apply(st, ins)
        assert pauli_expectation(st, parse_pauli("ZXX")) == pytest.approx(1)
        assert pauli_expectation(st, parse_pauli("-XYI")) == pytest.approx(1)

    def test_norm_preserved(self, rng):
        st = QuantumState(4)
        for ins in random_circuit(4, 60, 0, rng).instructions:
            oracle_apply(st, ins)
            assert st.norm() == pytest.approx(1, abs=1e-10)

    def test_rejects_measure_and_bad_qubits(self):
        st = QuantumState(2)
        with pytest.raises(InvalidGateError):
            oracle_apply(st, Instruction("MEASURE", (), parse_pauli("ZZ")))
        with pytest.raises(DimensionError):
            oracle_apply(st, Instruction("H", (5,)))

    def test_cap(self):
        with pytest.raises(DimensionError):
            QuantumState(13)


class TestExpectation:
    def test_basics(self):
        st = QuantumState(1)
        assert pauli_expectation(st, parse_pauli("Z")) == pytest.approx(1)
        assert pauli_expectation(st, parse_pauli("X")) == pytest.approx(0)

    def test_ghz(self):
        st = ghz()
        assert pauli_expectation(st, parse_pauli("XYY")) == pytest.approx(-1)
        assert pauli_expectation(st, parse_pauli("XXX")) == pytest.approx(1)

    def test_non_hermitian(self):
        with pytest.raises(InvalidObservableError):
            pauli_expectation(QuantumState(1), PauliOperator(1, 1, 0, 1))

    def test_vector_action_matches_matrix(self, rng):
        amps = rng.normal(size=8) + 1j * rng.normal(size=8)
        for x in range(8):
            for z in range(8):
                for ph in range(4):
                    p = PauliOperator(3, x, z, ph)
                    assert np.allclose(apply_pauli_vector(p, amps), pauli_matrix(p) @ amps)

    def test_stabilizer_circuits_give_trits(self, rng):
        for _ in range(20):
            st = QuantumState(4)
            for ins in random_circuit(4, 30, 0, rng).instructions:
                oracle_apply(st, ins)
            for _ in range(10):
                e = pauli_expectation(st, PauliOperator(4, int(rng.integers(16)), int(rng.integers(16))))
                assert min(abs(e - t) for t in (-1, 0, 1)) < 1e-9


class TestMeasure:
    def test_z_on_zero(self):
        st = QuantumState(1)
        assert all(oracle_measure(st, parse_pauli("Z"), CoinSource.from_seed(s)) == 0 for s in range(20))

    def test_x_on_zero_is_fair(self):
        ones = sum(oracle_measure(QuantumState(1), parse_pauli("X"), CoinSource.from_seed(s)) for s in range(2000))
        assert abs(ones / 2000 - 0.5) < 5 * np.sqrt(0.25 / 2000)

    def test_pm_column(self):
        for s in range(50):
            st = QuantumState(2)
            coins = CoinSource.from_seed(s)
            bits = [oracle_measure(st, parse_pauli(o), coins) for o in ("ZZ", "XX", "YY")]
            assert sum(bits) % 2 == 1

    def test_idempotent(self):
        st = QuantumState(2)
        coins = CoinSource.from_seed(3)
        a = oracle_measure(st, parse_pauli("XY"), coins)
        before = st.amps.copy()
        assert oracle_measure(st, parse_pauli("XY"), coins) == a
        assert np.allclose(st.amps, before)

    def test_impossible_projection(self):
        with pytest.raises(ValueError):
            project(QuantumState(1), parse_pauli("Z"), 1)
