"""Packed GF(2) helpers: Python ints <-> little-endian uint64 words, popcount, parity.

Bit k of a packed vector lives in word k // 64 at position k % 64.
"""

from __future__ import annotations

import numpy as np

WORD_BITS = 64


def nwords(nbits: int) -> int:
    return max(1, (nbits + WORD_BITS - 1) // WORD_BITS)


def to_words(value: int, nbits: int) -> np.ndarray:
    w = nwords(nbits)
    return np.frombuffer(value.to_bytes(8 * w, "little"), dtype="<u8").astype(np.uint64)


def from_words(words: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(words, dtype="<u8").tobytes(), "little")


def popcount(words: np.ndarray, axis: int = -1) -> np.ndarray:
    """Number of set bits along ``axis`` (int64)."""
    return np.bitwise_count(words).sum(axis=axis, dtype=np.int64)


def parity(words: np.ndarray, axis: int = -1) -> np.ndarray:
    """Parity of the set bits along ``axis`` (uint8)."""
    folded = np.bitwise_xor.reduce(words, axis=axis)
    return (np.bitwise_count(folded) & 1).astype(np.uint8)


def get_bit(rows: np.ndarray, q: int) -> np.ndarray:
    """Column ``q`` of a (rows, words) bit matrix as 0/1 uint64."""
    return (rows[:, q >> 6] >> np.uint64(q & 63)) & np.uint64(1)


def set_bit(rows: np.ndarray, q: int, col: np.ndarray) -> None:
    shift = np.uint64(q & 63)
    w = q >> 6
    rows[:, w] = (rows[:, w] & ~(np.uint64(1) << shift)) | (col.astype(np.uint64) << shift)


def xor_bit(rows: np.ndarray, q: int, col: np.ndarray) -> None:
    rows[:, q >> 6] ^= col.astype(np.uint64) << np.uint64(q & 63)


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of vectors packed into ints."""
    pivots: dict[int, int] = {}
    rank = 0
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                rank += 1
                break
            v ^= pivots[top]
    return rank


def gf2_solve(rows: list[int], rhs: list[int], ncols: int) -> int | None:
    """Find packed x with parity(rows[i] & x) == rhs[i] for all i, or None if inconsistent."""
    aug = [(r, b & 1) for r, b in zip(rows, rhs)]
    pivot_rows: list[tuple[int, int, int]] = []
    for col in range(ncols):
        bit = 1 << col
        idx = next((i for i, (r, _) in enumerate(aug) if r & bit), None)
        if idx is None:
            continue
        pr, pb = aug.pop(idx)
        aug = [((r ^ pr, b ^ pb) if r & bit else (r, b)) for r, b in aug]
        pivot_rows = [((r ^ pr, b ^ pb, c) if r & bit else (r, b, c)) for r, b, c in pivot_rows]
        pivot_rows.append((pr, pb, col))
    if any(b for r, b in aug):
        return None
    x = 0
    for _, b, col in pivot_rows:
        if b:
            x |= 1 << col
    return x
