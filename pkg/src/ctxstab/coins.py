"""Seedable fair-coin sources.

A source serves one or more *lanes*. Each lane owns an independent numpy
generator, so a batched run over many lanes is bit-for-bit the same as running
each lane's seed on its own. Coins are pulled from each generator in blocks of
64 to keep the per-coin cost low.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

SEED_MASK = (1 << 64) - 1
_BLOCK = 64


def shot_generator(seed: int, shot: int) -> np.random.Generator:
    """Independent stream for shot ``shot`` of a run seeded with ``seed``."""
    return np.random.default_rng([seed & SEED_MASK, shot])


class CoinSource:
    def __init__(self, generators: Sequence[np.random.Generator]):
        if not generators:
            raise ValueError("need at least one lane")
        self._gens = list(generators)
        self._buf = np.empty((len(self._gens), _BLOCK), dtype=np.uint8)
        self._pos = _BLOCK

    @classmethod
    def from_seed(cls, seed: int | None = None) -> CoinSource:
        return cls([np.random.default_rng(None if seed is None else seed & SEED_MASK)])

    @classmethod
    def for_shots(cls, seed: int, shots: Iterable[int]) -> CoinSource:
        return cls([shot_generator(seed, s) for s in shots])

    @classmethod
    def from_seeds(cls, seeds: Iterable[int]) -> CoinSource:
        return cls([np.random.default_rng(s & SEED_MASK) for s in seeds])

    @property
    def lanes(self) -> int:
        return len(self._gens)

    def coins(self) -> np.ndarray:
        """One fair bit per lane."""
        if self._pos == _BLOCK:
            for i, g in enumerate(self._gens):
                self._buf[i] = g.integers(0, 2, size=_BLOCK, dtype=np.uint8)
            self._pos = 0
        out = self._buf[:, self._pos].copy()
        self._pos += 1
        return out

    def coin(self) -> int:
        if self.lanes != 1:
            raise ValueError("coin() is single-lane; use coins()")
        return int(self.coins()[0])

    def uniform(self) -> float:
        """Uniform draw in [0, 1) from lane 0's generator (oracle Born sampling)."""
        return float(self._gens[0].random())


class PinnedCoins:
    """Replays a fixed coin sequence; each entry is a bit or a per-lane bit array."""

    def __init__(self, bits: Iterable, lanes: int = 1, fallback: CoinSource | None = None):
        self._bits = [np.broadcast_to(np.asarray(b, dtype=np.uint8), (lanes,)).copy() for b in bits]
        self._lanes = lanes
        self._fallback = fallback
        self.used = 0

    @property
    def lanes(self) -> int:
        return self._lanes

    def coins(self) -> np.ndarray:
        if self.used < len(self._bits):
            out = self._bits[self.used]
        elif self._fallback is not None:
            out = self._fallback.coins()
        else:
            raise IndexError(f"pinned coin sequence exhausted after {self.used} draws")
        self.used += 1
        return out

    def coin(self) -> int:
        return int(self.coins()[0])

    def uniform(self) -> float:
        if self._fallback is None:
            raise IndexError("pinned coins cannot supply uniform draws")
        return self._fallback.uniform()
