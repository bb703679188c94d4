"""The ontic state: measurement context M_1..M_n and conjugate context C_1..C_n.

The 2n basis elements are stored row-major as packed bit matrices, rows
``0..n-1`` for the measurement context and ``n..2n-1`` for the conjugate
context. Every stored element is Hermitian, so a row carries a single sign bit.

Sign bits are kept per *lane*: a state can carry many independent coin
histories side by side. Which rows get updated, and how their x/z bits change,
never depends on signs, so all lanes share one bit matrix and only the sign
columns differ. A single-lane state is the plain model.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from . import bits
from .coins import CoinSource
from .errors import (
    DimensionError,
    InvalidGateError,
    InvalidObservableError,
    InvalidPreparationError,
)
from .pauli import PauliOperator, commutes, format_pauli, is_hermitian, is_identity_support

TraceHook = Callable[[str, str], None]

_ONE = np.uint64(1)


class OnticState:
    def __init__(self, n: int, rng, trace: TraceHook | None = None):
        if n < 1:
            raise DimensionError(f"need at least one qubit, got n={n}")
        self.n = n
        self.rng = rng
        self.lanes = rng.lanes
        self.trace = trace
        w = bits.nwords(n)
        self.xs = np.zeros((2 * n, w), dtype=np.uint64)
        self.zs = np.zeros((2 * n, w), dtype=np.uint64)
        self.signs = np.zeros((2 * n, self.lanes), dtype=np.uint8)

    def copy(self) -> OnticState:
        other = OnticState.__new__(OnticState)
        other.__dict__.update(self.__dict__)
        other.xs, other.zs, other.signs = self.xs.copy(), self.zs.copy(), self.signs.copy()
        return other

    def row(self, r: int, lane: int = 0) -> PauliOperator:
        return PauliOperator(
            self.n, bits.from_words(self.xs[r]), bits.from_words(self.zs[r]), 2 * int(self.signs[r, lane])
        )

    def set_row(self, r: int, p: PauliOperator) -> None:
        self.xs[r] = bits.to_words(p.x, self.n)
        self.zs[r] = bits.to_words(p.z, self.n)
        self.signs[r] = p.sign

    def M(self, lane: int = 0) -> list[PauliOperator]:
        return [self.row(k, lane) for k in range(self.n)]

    def C(self, lane: int = 0) -> list[PauliOperator]:
        return [self.row(self.n + k, lane) for k in range(self.n)]

    def snapshot(self, lane: int = 0) -> str:
        """Brace notation ``{M_1,...,M_n;C_1,...,C_n}``; conjugate signs always explicit."""
        ms = ",".join(format_pauli(p) for p in self.M(lane))
        cs = ",".join(format_pauli(p, explicit_sign=True) for p in self.C(lane))
        return "{" + ms + ";" + cs + "}"

    def __str__(self) -> str:
        return self.snapshot()

    def _emit(self, label: str) -> None:
        if self.trace is not None:
            self.trace(label, self.snapshot())


@dataclass(frozen=True)
class Expansion:
    """Coordinates of an observable in the current basis.

    ``m[k]`` is the coefficient of M_k, ``c[k]`` that of C_k. The ordered
    product M_1..M_n C_1..C_n of the selected elements equals ``i^(2v+w)``
    times the target. ``v`` holds one entry per lane.
    """

    m: tuple[int, ...]
    c: tuple[int, ...]
    v: np.ndarray
    w: int


@dataclass(frozen=True)
class MemoryReport:
    n: int
    context_bits: int
    storage_bits: int

    @property
    def overhead_bits(self) -> int:
        return self.storage_bits - self.context_bits


# -- preparation ---------------------------------------------------------------------


def prepare_canonical(n: int, rng=None, trace: TraceHook | None = None) -> OnticState:
    """|0...0>: M_k = Z_k, C_k = (-1)^r_k X_k with r_k one fair coin per qubit."""
    if rng is None:
        rng = CoinSource.from_seed()
    state = OnticState(n, rng, trace)
    for k in range(n):
        w, b = k >> 6, np.uint64(k & 63)
        state.zs[k, w] = _ONE << b
        state.xs[n + k, w] = _ONE << b
        state.signs[n + k] = rng.coins()
    state._emit("prepare")
    return state


def prepare_by_measurement(state: OnticState, generators: Sequence[PauliOperator]) -> None:
    """Drive the measurement context onto the stabilizer group of ``generators`` (signs included).

    Each generator is measured once. Afterwards, generators whose stored value
    disagrees with the requested sign are fixed together by one Pauli
    correction that anticommutes with exactly those generators.
    """
    gens = list(generators)
    for g in gens:
        _check_observable(state, g)
        if is_identity_support(g):
            raise InvalidPreparationError("identity is not a valid generator")
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if not commutes(g, h):
                raise InvalidPreparationError(f"generators {g} and {h} anticommute")
    if bits.gf2_rank([(g.x << state.n) | g.z for g in gens]) != len(gens):
        raise InvalidPreparationError("generators are not independent")

    for g in gens:
        _measure(state, g.unsigned())

    # Every generator now lies in span{M_k}. Conjugating by C_j negates M_j alone, so a
    # product of C_j with coefficients b flips generator i iff a_i . b = 1. Lanes can
    # disagree on which generators are wrong, so solve lane by lane.
    coeffs = []
    values = []
    for g in gens:
        m, c, v, _w = _expand(state, g)
        assert not c.any(), "measured generator left the measurement context"
        coeffs.append(sum(1 << int(j) for j in np.flatnonzero(m)))
        values.append(v)
    for lane in range(state.lanes):
        flips = bits.gf2_solve(coeffs, [int(v[lane]) for v in values], state.n)
        if flips is None:
            raise InvalidPreparationError("inconsistent generator signs")
        for j in range(state.n):
            if (flips >> j) & 1:
                state.signs[j, lane] ^= 1
    state._emit("prepared")


# -- expansion and measurement ----------------------------------------------------


def _check_observable(state: OnticState, p: PauliOperator) -> None:
    if p.n != state.n:
        raise DimensionError(f"observable width {p.n} != state width {state.n}")
    if not is_hermitian(p):
        raise InvalidObservableError(f"observable {p} is not Hermitian")


def _anticommuting_rows(state: OnticState, p: PauliOperator) -> np.ndarray:
    px = bits.to_words(p.x, state.n)
    pz = bits.to_words(p.z, state.n)
    return bits.parity((state.xs & pz) ^ (state.zs & px))


def _expand(state: OnticState, p: PauliOperator):
    """(m, c, v per lane, w) for Hermitian ``p``; see :class:`Expansion`."""
    n = state.n
    anti = _anticommuting_rows(state, p)
    c = anti[:n]  # p . M_k
    m = anti[n:]  # p . C_k
    sel = np.concatenate([np.flatnonzero(m), n + np.flatnonzero(c)])
    xsel = state.xs[sel]
    zsel = state.zs[sel]
    # Phase of the ordered product, signs aside:
    #   sum_r |x_r & z_r| + 2 sum_{r<r'} |z_r & x_r'| - |x'' & z''|   (mod 4)
    zprefix = np.bitwise_xor.accumulate(zsel, axis=0)
    zbefore = np.vstack([np.zeros((1, zsel.shape[1]), dtype=np.uint64), zprefix[:-1]]) if len(sel) else zsel
    xtot = np.bitwise_xor.reduce(xsel, axis=0) if len(sel) else np.zeros(state.xs.shape[1], np.uint64)
    ztot = zprefix[-1] if len(sel) else xtot
    if bits.from_words(xtot) != p.x or bits.from_words(ztot) != p.z:
        raise AssertionError("basis expansion does not reproduce the observable; state is corrupt")
    const = (
        int(bits.popcount(xsel & zsel).sum())
        + 2 * int(bits.parity(xsel & zbefore).sum() if len(sel) else 0)
        - int(bits.popcount(xtot & ztot))
    )
    # The composition equals i^(2v+w) times the observable.
    d = (const - p.phase) % 4
    sign_sum = np.bitwise_xor.reduce(state.signs[sel], axis=0) if len(sel) else np.zeros(state.lanes, np.uint8)
    v = ((d >> 1) ^ sign_sum).astype(np.uint8)
    return m, c, v, d & 1


def expand(state: OnticState, p: PauliOperator) -> Expansion:
    _check_observable(state, p)
    m, c, v, w = _expand(state, p)
    return Expansion(tuple(int(b) for b in m), tuple(int(b) for b in c), v, w)


def outcome(state: OnticState, p: PauliOperator) -> np.ndarray:
    """Value the state assigns to ``p`` (per lane) without measuring it."""
    return expand(state, p).v


def _multiply_rows(state: OnticState, targets: np.ndarray, src: int) -> None:
    """Row_t <- Row_t * Row_src for commuting Hermitian rows."""
    if len(targets) == 0:
        return
    xt, zt = state.xs[targets], state.zs[targets]
    xk, zk = state.xs[src], state.zs[src]
    x2, z2 = xt ^ xk, zt ^ zk
    q = (
        bits.popcount(xt & zt)
        + int(bits.popcount(xk & zk))
        + 2 * bits.popcount(zt & xk)
        - bits.popcount(x2 & z2)
    ) % 4
    # q is even because the rows commute; its high bit is the extra sign.
    flip = (q >> 1).astype(np.uint8)
    state.xs[targets] = x2
    state.zs[targets] = z2
    state.signs[targets] ^= state.signs[src] ^ flip[:, None]


def _measure(state: OnticState, p: PauliOperator) -> tuple[np.ndarray, int | None]:
    n = state.n
    tag = format_pauli(p)
    if is_identity_support(p):
        v = np.full(state.lanes, p.sign, dtype=np.uint8)
        if state.trace is not None:
            state.trace(f"M={tag} A v={_fmt_lanes(v)} (scalar)", state.snapshot())
        return v, None

    m, c, v, _w = _expand(state, p)
    if state.trace is not None:
        state.trace(f"M={tag} A v={_fmt_lanes(v)}", state.snapshot())

    cset = np.flatnonzero(c)
    if len(cset):
        case = "i"
        k = int(cset[0])
        _multiply_rows(state, cset[1:], k)
        state.xs[n + k] = state.xs[k]
        state.zs[n + k] = state.zs[k]
        state.signs[n + k] = state.signs[k]
    else:
        case = "ii"
        # Replace the heaviest candidate generator; ties go to the smallest index.
        cand = np.flatnonzero(m)
        weight = bits.popcount(state.xs[cand] | state.zs[cand])
        k = int(cand[np.argmax(weight)])
    state.xs[k] = bits.to_words(p.x, n)
    state.zs[k] = bits.to_words(p.z, n)
    state.signs[k] = p.sign ^ v
    mset = np.flatnonzero(m)
    _multiply_rows(state, n + mset[mset != k], n + k)
    if state.trace is not None:
        state.trace(f"M={tag} B case {case} k={k + 1}", state.snapshot())

    state.signs[n + k] = state.rng.coins()
    if state.trace is not None:
        state.trace(f"M={tag} C", state.snapshot())
    return v, k


def _fmt_lanes(v: np.ndarray) -> str:
    return str(int(v[0])) if len(v) == 1 else "".join(map(str, v.tolist()))


def measure_lanes(state: OnticState, p: PauliOperator) -> np.ndarray:
    """Measure ``p`` in every lane; returns the outcome bit per lane."""
    _check_observable(state, p)
    return _measure(state, p)[0]


def measure(state: OnticState, p: PauliOperator) -> int:
    """Outcome v of measuring Hermitian ``p`` ((-1)^v is the eigenvalue); updates the state."""
    if state.lanes != 1:
        raise ValueError("measure() needs a single-lane state; use measure_lanes()")
    return int(measure_lanes(state, p)[0])


# -- Clifford and Pauli gates ---------------------------------------------------------


def _check_qubit(state: OnticState, q: int) -> None:
    if not (isinstance(q, (int, np.integer)) and 0 <= q < state.n):
        raise DimensionError(f"qubit index {q} out of range for n={state.n}")


def _flip_signs(state: OnticState, mask: np.ndarray) -> None:
    state.signs ^= mask.astype(np.uint8)[:, None]


def apply_h(state: OnticState, q: int) -> None:
    _check_qubit(state, q)
    x, z = bits.get_bit(state.xs, q), bits.get_bit(state.zs, q)
    _flip_signs(state, x & z)
    bits.set_bit(state.xs, q, z)
    bits.set_bit(state.zs, q, x)
    state._emit(f"H {q}")


def apply_s(state: OnticState, q: int) -> None:
    _check_qubit(state, q)
    x, z = bits.get_bit(state.xs, q), bits.get_bit(state.zs, q)
    _flip_signs(state, x & z)
    bits.xor_bit(state.zs, q, x)
    state._emit(f"S {q}")


def _check_pair(state: OnticState, a: int, b: int) -> None:
    _check_qubit(state, a)
    _check_qubit(state, b)
    if a == b:
        raise InvalidGateError(f"two-qubit gate needs distinct qubits, got {a} twice")


def apply_cnot(state: OnticState, qc: int, qt: int) -> None:
    _check_pair(state, qc, qt)
    xc, zc = bits.get_bit(state.xs, qc), bits.get_bit(state.zs, qc)
    xt, zt = bits.get_bit(state.xs, qt), bits.get_bit(state.zs, qt)
    _flip_signs(state, xc & zt & (xt ^ zc ^ _ONE))
    bits.xor_bit(state.xs, qt, xc)
    bits.xor_bit(state.zs, qc, zt)
    state._emit(f"CNOT {qc} {qt}")


def apply_cz(state: OnticState, q1: int, q2: int) -> None:
    _check_pair(state, q1, q2)
    x1, z1 = bits.get_bit(state.xs, q1), bits.get_bit(state.zs, q1)
    x2, z2 = bits.get_bit(state.xs, q2), bits.get_bit(state.zs, q2)
    _flip_signs(state, x1 & x2 & (z1 ^ z2))
    bits.xor_bit(state.zs, q1, x2)
    bits.xor_bit(state.zs, q2, x1)
    state._emit(f"CZ {q1} {q2}")


def apply_x(state: OnticState, q: int) -> None:
    _check_qubit(state, q)
    _flip_signs(state, bits.get_bit(state.zs, q))
    state._emit(f"X {q}")


def apply_y(state: OnticState, q: int) -> None:
    _check_qubit(state, q)
    _flip_signs(state, bits.get_bit(state.xs, q) ^ bits.get_bit(state.zs, q))
    state._emit(f"Y {q}")


def apply_z(state: OnticState, q: int) -> None:
    _check_qubit(state, q)
    _flip_signs(state, bits.get_bit(state.xs, q))
    state._emit(f"Z {q}")


def apply_pauli(state: OnticState, p: PauliOperator) -> None:
    """Conjugate by the Pauli ``p``: negates every basis element anticommuting with it."""
    if p.n != state.n:
        raise DimensionError(f"Pauli width {p.n} != state width {state.n}")
    _flip_signs(state, _anticommuting_rows(state, p))


# -- diagnostics --------------------------------------------------------------------


def check_symplectic(state: OnticState) -> bool:
    """All elements Hermitian, contexts commuting internally, M_j . C_k = delta_jk (mod 2)."""
    n = state.n
    if state.signs.max(initial=0) > 1:
        return False
    want = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    idx = np.arange(n)
    want[idx, n + idx] = 1
    want[n + idx, idx] = 1
    for r in range(2 * n):
        gram = bits.parity((state.xs & state.zs[r]) ^ (state.zs & state.xs[r]))
        if not np.array_equal(gram, want[r]):
            return False
    return True


def context_bits(n: int) -> int:
    """2n basis elements of 2n + 1 bits each."""
    return 4 * n * n + 2 * n


def stats(state: OnticState) -> MemoryReport:
    storage = 8 * (state.xs.nbytes + state.zs.nbytes + state.signs.nbytes)
    return MemoryReport(state.n, context_bits(state.n), storage)
