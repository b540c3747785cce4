"""Portable seeded RNG used by puzzle generation.

xorshift64* (Marsaglia xorshift with a multiplicative output scramble),
seeded through one SplitMix64 step so that seed 0 is usable. The stream is
fully defined by this file, independent of Python or library versions, so a
puzzle file's seed replays identically everywhere.
"""
from __future__ import annotations

_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class Xorshift64Star:
    """Deterministic 64-bit generator; state never becomes zero."""

    def __init__(self, seed: int):
        self._state = _splitmix64(seed & _MASK) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self._state
        x ^= (x >> 12)
        x = (x ^ (x << 25)) & _MASK
        x ^= (x >> 27)
        self._state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection sampling."""
        if n <= 0:
            raise ValueError("randint bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            draw = self.next_u64()
            if draw < limit:
                return draw % n

    def choice(self, seq):
        if not seq:
            raise ValueError("choice from empty sequence")
        return seq[self.randint(len(seq))]

    def shuffle(self, items: list) -> None:
        # Fisher-Yates, back to front.
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, population: int, k: int) -> list[int]:
        """k distinct integers drawn uniformly from [0, population)."""
        if not 0 <= k <= population:
            raise ValueError(f"cannot sample {k} from {population}")
        pool = list(range(population))
        for i in range(k):
            j = i + self.randint(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
