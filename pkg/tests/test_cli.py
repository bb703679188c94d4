import json
from collections import Counter

import pytest

from ctxstab.cli import main
from ctxstab.demos import SHALLOW


@pytest.fixture
def fig1(tmp_path):
    path = tmp_path / "fig1.circ"
    path.write_text(SHALLOW)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def outcomes_by_shot(out):
    shots = {}
    for line in out.splitlines():
        if line.startswith("model shot="):
            _, shot, _label, _obs, bit = line.split()
            shots.setdefault(shot, []).append(bit)
    return ["".join(b) for b in shots.values()]


class TestRun:
    def test_fig1_frequencies(self, capsys, fig1):
        code, out, _ = run(capsys, "run", fig1, "--shots", "4000", "--seed", "7")
        assert code == 0
        counts = Counter(outcomes_by_shot(out))
        assert set(counts) == {"100", "010", "001", "111"}
        assert all(abs(c / 4000 - 0.25) <= 0.03 for c in counts.values())

    def test_empty(self, capsys, tmp_path):
        path = tmp_path / "empty.circ"
        path.write_text("qubits 2\n")
        code, out, _ = run(capsys, "run", str(path), "--seed", "1")
        assert code == 0
        assert [line for line in out.splitlines() if not line.startswith("#")] == []

    def test_parse_error_exit(self, capsys, tmp_path):
        path = tmp_path / "bad.circ"
        path.write_text("qubits 2\nM iXY\n")
        code, _, err = run(capsys, "run", str(path))
        assert code == 1
        assert ":2:3:" in err

    def test_missing_file_exit(self, capsys, tmp_path):
        code, _, _ = run(capsys, "run", str(tmp_path / "nope.circ"))
        assert code == 2

    def test_jsonl(self, capsys, fig1):
        code, out, _ = run(capsys, "run", fig1, "--shots", "3", "--seed", "2", "--format", "jsonl")
        rows = [json.loads(line) for line in out.splitlines()]
        assert code == 0 and len(rows) == 9
        assert {r["label"] for r in rows} == {"z1", "z2", "z3"}

    def test_byte_identical(self, capsys, fig1):
        a = run(capsys, "run", fig1, "--shots", "50", "--seed", "0x2a")
        b = run(capsys, "run", fig1, "--shots", "50", "--seed", "42")
        assert a == b

    def test_env_seed(self, capsys, fig1, monkeypatch):
        monkeypatch.setenv("CTXSTAB_SEED", "99")
        a = run(capsys, "run", fig1, "--shots", "20")
        b = run(capsys, "run", fig1, "--shots", "20", "--seed", "99")
        assert a == b

    def test_trace(self, capsys, fig1):
        code, out, _ = run(capsys, "run", fig1, "--seed", "3", "--trace")
        assert code == 0
        assert "M=ZII B case i k=2" in out
        assert "{ZXX,-XYI,-XIY;" in out

    def test_both_backends(self, capsys, fig1):
        code, out, _ = run(capsys, "run", fig1, "--shots", "4000", "--seed", "5", "--backend", "both")
        assert code == 0
        compares = [line for line in out.splitlines() if line.startswith("compare")]
        assert len(compares) == 3
        for line in compares:
            delta = float(line.split("delta=")[1].split()[0])
            assert abs(delta) < 0.05

    def test_oracle_cap(self, capsys, tmp_path):
        path = tmp_path / "wide.circ"
        path.write_text("qubits 13\nM " + "Z" * 13 + "\n")
        code, _, err = run(capsys, "run", str(path), "--backend", "oracle")
        assert code == 2 and "at most" in err


class TestOtherCommands:
    @pytest.mark.parametrize("name", ["pm-square", "ghz", "shallow"])
    @pytest.mark.parametrize("seed", ["0", "1", "12345"])
    def test_demos(self, capsys, name, seed):
        code, out, _ = run(capsys, "demo", name, "--seed", seed)
        assert code == 0
        assert "result: matches quantum predictions" in out

    def test_pm_demo_shows_reference_basis(self, capsys):
        _, out, _ = run(capsys, "demo", "pm-square", "--seed", "0")
        assert "{ZI,IZ;+XI,-IX}" in out
        assert "{ZZ,IZ;+XI,-XX}" in out

    def test_unknown_demo(self, capsys):
        code, _, err = run(capsys, "demo", "nope")
        assert code == 2 and "unknown demo" in err

    @pytest.mark.parametrize("n,bits", [(1, 6), (100, 40200)])
    def test_stats(self, capsys, n, bits):
        code, out, _ = run(capsys, "stats", str(n), "--no-timing")
        assert code == 0
        assert f"context_bits {bits}" in out.splitlines()

    def test_stats_timing(self, capsys):
        code, out, _ = run(capsys, "stats", "40")
        assert code == 0 and "measure_ratio_2n_over_n" in out

    def test_selftest(self, capsys):
        code, out, _ = run(capsys, "selftest", "--seed", "1")
        assert code == 0
        assert out.count("PASS") == 5
