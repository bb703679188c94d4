"""Signed n-qubit Pauli operators as packed binary symplectic vectors.

An operator is stored as ``(x, z, phase)`` and stands for

    i^phase * (i^(x_0 z_0) X^x_0 Z^z_0) (x) ... (x) (i^(x_{n-1} z_{n-1}) X^x_{n-1} Z^z_{n-1})

so ``Y`` is ``x=z=1`` with phase 0, and an operator is Hermitian exactly when
its phase is even. ``x`` and ``z`` are Python ints used as bitsets: bit ``k``
is qubit ``k``, which is character ``k`` of the text form (qubit 0 leftmost),
so ``"ZI"`` is Z on the first qubit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, PauliParseError

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {v: k for k, v in _LETTER_BITS.items()}


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError(f"Pauli operator needs n >= 1, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise DimensionError(f"x/z bits exceed width {self.n}")
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def sign(self) -> int:
        """Sign bit v of a Hermitian operator (-1)^v P."""
        return self.phase >> 1

    def bits(self, q: int) -> tuple[int, int]:
        return (self.x >> q) & 1, (self.z >> q) & 1

    def letter(self, q: int) -> str:
        return _BITS_LETTER[self.bits(q)]

    def unsigned(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, 0)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return compose(self, other)

    def __neg__(self) -> PauliOperator:
        return negate(self)

    def __str__(self) -> str:
        return format_pauli(self)


def identity(n: int) -> PauliOperator:
    return PauliOperator(n, 0, 0, 0)


def single(n: int, q: int, letter: str) -> PauliOperator:
    """``letter`` on qubit ``q`` (0-based), identity elsewhere."""
    if not 0 <= q < n:
        raise DimensionError(f"qubit {q} out of range for n={n}")
    bx, bz = _LETTER_BITS[letter]
    return PauliOperator(n, bx << q, bz << q, 0)


def _check_width(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise DimensionError(f"width mismatch: {p.n} vs {q.n}")


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    """sum_k x_k z'_k - x'_k z_k as a plain (unreduced) integer."""
    _check_width(p, q)
    return (p.x & q.z).bit_count() - (q.x & p.z).bit_count()


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return symplectic_product(p, q) % 2 == 0


def compose(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Operator product ``p @ q`` with the phase kept exactly mod 4."""
    _check_width(p, q)
    x = p.x ^ q.x
    z = p.z ^ q.z
    # Re-canonicalise: drop both i^(xz) factors, commute Z^z past X^x', restore i^(x''z'').
    phase = (
        p.phase
        + q.phase
        + (p.x & p.z).bit_count()
        + (q.x & q.z).bit_count()
        + 2 * (p.z & q.x).bit_count()
        - (x & z).bit_count()
    )
    return PauliOperator(p.n, x, z, phase)


def negate(p: PauliOperator) -> PauliOperator:
    return PauliOperator(p.n, p.x, p.z, p.phase + 2)


def multiply_i(p: PauliOperator) -> PauliOperator:
    return PauliOperator(p.n, p.x, p.z, p.phase + 1)


def is_hermitian(p: PauliOperator) -> bool:
    return p.phase % 2 == 0


def is_identity_support(p: PauliOperator) -> bool:
    return p.x == 0 and p.z == 0


def parse_pauli(text: str, n: int | None = None) -> PauliOperator:
    """Parse ``[+-]?[IXYZ]{n}``; ``n=None`` takes the width from the string."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    phase = 0
    pos = 0
    if s[:1] in "+-" and s:
        phase = 2 if s[0] == "-" else 0
        pos = 1
    if s[pos:pos + 1] == "i":
        raise PauliParseError("imaginary phase prefix: observable must be Hermitian", offset + pos)
    body = s[pos:]
    x = z = 0
    for k, ch in enumerate(body):
        bits = _LETTER_BITS.get(ch)
        if bits is None:
            raise PauliParseError(f"bad Pauli character {ch!r}", offset + pos + k)
        x |= bits[0] << k
        z |= bits[1] << k
    if not body:
        raise PauliParseError("empty Pauli string", offset + pos)
    if n is not None and len(body) != n:
        raise PauliParseError(
            f"Pauli string has length {len(body)}, expected {n}", offset + pos + min(len(body), n)
        )
    return PauliOperator(len(body), x, z, phase)


def format_pauli(p: PauliOperator, explicit_sign: bool = False) -> str:
    """Text form; ``+`` only when ``explicit_sign``; odd phases print as ``i``/``-i``."""
    prefix = {0: "+" if explicit_sign else "", 1: "i", 2: "-", 3: "-i"}[p.phase]
    return prefix + "".join(p.letter(q) for q in range(p.n))


def normalize_pauli_text(text: str) -> str:
    s = text.strip()
    return s[1:] if s.startswith("+") else s
