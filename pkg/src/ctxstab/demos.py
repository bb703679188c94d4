"""Worked contextuality examples: Peres-Mermin square, GHZ, and a shallow-circuit instance."""

from __future__ import annotations

from .circuit import Circuit, execute, parse_circuit
from .coins import CoinSource, PinnedCoins
from .context import OnticState, measure, prepare_canonical
from .pauli import parse_pauli

PM_SQUARE = (
    ("ZI", "IZ", "ZZ"),
    ("IX", "XI", "XX"),
    ("ZX", "XZ", "YY"),
)

# Each row multiplies to +I and so does each of the first two columns; the last column gives -I,
# so its outcome parity is 1 and every other context's is 0.
PM_CONTEXTS = {
    **{f"row{i + 1}": (PM_SQUARE[i], 0) for i in range(3)},
    **{f"col{j + 1}": (tuple(PM_SQUARE[i][j] for i in range(3)), 1 if j == 2 else 0) for j in range(3)},
}

# Maps |000> to the GHZ basis {-XYY,-YXY,-YYX; +YII,+IYI,+IIY} (conjugate signs carried by the coins).
GHZ_PREP = """\
qubits 3
H 0
H 1
H 2
CZ 0 1
CZ 0 2
CZ 1 2
Z 0
S 0
Z 1
S 1
Z 2
S 2
H 0
H 1
H 2
S 0
S 1
S 2
"""

# Shallow-circuit instance f(x) = x^T A x mod 4, A = [[0,1,1],[1,1,0],[1,0,1]].
SHALLOW = """\
qubits 3
H 0
H 1
H 2
CZ 0 1
CZ 0 2
S 1
S 2
H 0
H 1
H 2
M z1=+ZII
M z2=+IZI
M z3=+IIZ
"""

SHALLOW_SOLUTIONS = {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)}


def ghz_state(rng, trace=None) -> OnticState:
    state = prepare_canonical(3, rng)
    state.trace = trace
    execute(parse_circuit(GHZ_PREP), state)
    return state


def shallow_circuit() -> Circuit:
    return parse_circuit(SHALLOW)


def _tracer(lines: list[str]):
    def hook(label: str, snap: str) -> None:
        lines.append(f"  {label:<26} {snap}")

    return hook


def demo_pm_square(seed: int) -> tuple[list[str], bool]:
    """Each PM context from |00> with the initial conjugate signs (0, 1)."""
    lines = ["Peres-Mermin square from |00>, initial basis coins (0, 1)"]
    disturbance = CoinSource.from_seed(seed)
    ok = True
    for name, (obs, expected) in PM_CONTEXTS.items():
        lines.append(f"{name}: {' '.join(obs)}")
        state = prepare_canonical(2, PinnedCoins([0, 1], fallback=disturbance), trace=_tracer(lines))
        bits = [measure(state, parse_pauli(o)) for o in obs]
        par = sum(bits) % 2
        ok &= par == expected
        lines.append(f"  outcomes {bits} parity {par} (QM: {expected})")
    return lines, ok


def demo_ghz(seed: int) -> tuple[list[str], bool]:
    rng = CoinSource.from_seed(seed)
    lines = ["GHZ state, stabilizers -XYY, -YXY, -YYX"]
    base = ghz_state(rng)
    lines.append(f"  {'initial':<26} {base.snapshot()}")
    ok = True
    for seq, expected in ((("YII", "IYI", "IIX"), 1), (("XII", "IXI", "IIX"), 0)):
        state = base.copy()
        state.trace = _tracer(lines)
        lines.append(f"sequence {' '.join(seq)}")
        bits = [measure(state, parse_pauli(o)) for o in seq]
        par = sum(bits) % 2
        ok &= par == expected
        lines.append(f"  outcomes {bits} parity {par} (QM: {expected})")
    return lines, ok


def demo_shallow(seed: int) -> tuple[list[str], bool]:
    lines = ["Shallow circuit for A = [[0,1,1],[1,1,0],[1,0,1]]"]
    state = prepare_canonical(3, CoinSource.from_seed(seed), trace=_tracer(lines))
    z = tuple(r.outcome for r in execute(shallow_circuit(), state))
    ok = z in SHALLOW_SOLUTIONS
    lines.append(f"  z = {''.join(map(str, z))} ({'in' if ok else 'NOT in'} solution set 100,010,001,111)")
    return lines, ok


DEMOS = {"pm-square": demo_pm_square, "ghz": demo_ghz, "shallow": demo_shallow}
