import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctxstab.checks import random_circuit
from ctxstab.circuit import Circuit, execute, execute_oracle, format_circuit, parse_circuit, replay_oracle
from ctxstab.coins import CoinSource, PinnedCoins
from ctxstab.context import prepare_canonical
from ctxstab.demos import SHALLOW
from ctxstab.errors import CircuitParseError
from ctxstab.oracle import QuantumState


class TestParse:
    def test_small(self):
        c = parse_circuit("qubits 2\nH 0\nCNOT 0 1\nM +ZZ")
        assert c.n == 2 and len(c.instructions) == 3
        assert [i.kind for i in c.instructions] == ["H", "CNOT", "MEASURE"]

    def test_fig1_instruction_count(self):
        c = parse_circuit(SHALLOW)
        assert len(c.instructions) == 13
        assert c.labels() == ["z1", "z2", "z3"]

    def test_comments_case_and_aliases(self):
        c = parse_circuit("# header\nQUBITS 2\n  h 0   # spin\ncz 0 1\nmeasure -XY\n")
        assert [str(i) for i in c.instructions] == ["H 0", "CZ 0 1", "M -XY"]

    def test_default_labels(self):
        assert parse_circuit("qubits 1\nM Z\nM X").labels() == ["m0", "m1"]

    @pytest.mark.parametrize(
        "text,line,column,fragment",
        [
            ("qubits 2\nM iXY", 2, 3, "Hermitian"),
            ("H 0", 1, 1, "qubits"),
            ("qubits 2\nqubits 3", 2, 1, "duplicate"),
            ("qubits 2\nFOO 1", 2, 1, "unknown"),
            ("qubits 2\nCNOT 0", 2, 1, "takes 2"),
            ("qubits 2\nH 2", 2, 3, "out of range"),
            ("qubits 2\nH x", 2, 3, "integer"),
            ("qubits 2\nCZ 1 1", 2, 6, "duplicate qubit"),
            ("qubits 2\nM ZQ", 2, 4, "character"),
            ("qubits 2\nM ZZZ", 2, 5, "length"),
            ("qubits 2\nM a=ZZ\nM a=XX", 3, 3, "duplicate measurement label"),
            ("", 1, 1, "qubits"),
        ],
    )
    def test_errors(self, text, line, column, fragment):
        with pytest.raises(CircuitParseError) as exc:
            parse_circuit(text)
        assert (exc.value.line, exc.value.column) == (line, column)
        assert fragment in exc.value.reason

    @given(st.integers(1, 6), st.integers(0, 2**32 - 1))
    def test_format_round_trip(self, n, seed):
        c = random_circuit(n, 15, 4, np.random.default_rng(seed))
        text = format_circuit(c)
        assert parse_circuit(text) == c
        assert format_circuit(parse_circuit(text)) == text

    @given(st.text(alphabet="qubitsHSXYZCNOTM=+-iI0123 \n#", max_size=80))
    def test_fuzz_never_crashes(self, text):
        try:
            parse_circuit(text)
        except CircuitParseError as e:
            assert e.line >= 1 and e.column >= 1


class TestExecute:
    def test_fig1_pinned_coins(self):
        circ = parse_circuit(SHALLOW)
        for r, s, t in itertools.product((0, 1), repeat=3):
            state = prepare_canonical(3, PinnedCoins([r, s, t], fallback=CoinSource.from_seed(0)))
            z = [rec.outcome for rec in execute(circ, state)]
            assert z == [s ^ t, 1 ^ r ^ s, r ^ t]

    def test_fig1_pre_measurement_basis(self):
        circ = parse_circuit(SHALLOW)
        state = prepare_canonical(3, PinnedCoins([0, 0, 0]))
        gates = Circuit(3, tuple(i for i in circ.instructions if i.kind != "MEASURE"))
        execute(gates, state)
        assert state.snapshot() == "{ZXX,-XYI,-XIY;+XII,+IXI,+IIX}"

    def test_empty_circuit(self):
        assert execute(parse_circuit("qubits 3\n"), prepare_canonical(3, CoinSource.from_seed(0))) == []

    def test_records(self):
        circ = parse_circuit("qubits 2\nM a=ZI\nM -IZ")
        recs = execute(circ, prepare_canonical(2, CoinSource.for_shots(0, range(2))), shot=10)
        assert [(r.shot, r.label, r.observable, r.outcome) for r in recs] == [
            (10, "a", "+ZI", 0),
            (10, "m1", "-IZ", 1),
            (11, "a", "+ZI", 0),
            (11, "m1", "-IZ", 1),
        ]

    def test_oracle_backend(self):
        circ = parse_circuit(SHALLOW)
        solutions = {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)}
        for s in range(30):
            recs = execute_oracle(circ, QuantumState(3), CoinSource.from_seed(s))
            assert tuple(r.outcome for r in recs) in solutions
            assert all(r.backend == "oracle" for r in recs)

    def test_replay_rejects_impossible(self):
        circ = parse_circuit("qubits 1\nM Z")
        assert replay_oracle(circ, [0]) == pytest.approx([1.0])
        with pytest.raises(ValueError):
            replay_oracle(circ, [1])
