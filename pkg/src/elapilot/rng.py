"""Portable deterministic 64-bit PRNG (SplitMix64) with named stream splitting.

Every stochastic component of the package draws from an `Rng` so that a run is
reproducible from (seed, stream label) alone, independent of platform, Python
version, and library versions. Engines, instance generators, and any future
consumers derive their own streams via `Rng.for_stream` so they never share
state.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def _fnv1a(label: str) -> int:
    h = _FNV_OFFSET
    for byte in label.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


class Rng:
    """SplitMix64 generator.

    Integer draws use the multiply-shift reduction (bias < n / 2**64, i.e.
    negligible for every n used here); floats use the top 53 bits.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    @classmethod
    def for_stream(cls, seed: int, label: str) -> "Rng":
        """Derive an independent stream from a base seed and a stream name."""
        return cls(_mix((seed & _MASK64) ^ _fnv1a(label)))

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix(self._state)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("randrange() requires n >= 1")
        return (self.next_u64() * n) >> 64

    def randint_pair(self, n: int) -> tuple[int, int]:
        """Two distinct indices in [0, n), order as drawn."""
        if n < 2:
            raise ValueError("randint_pair() requires n >= 2")
        i = self.randrange(n)
        j = self.randrange(n - 1)
        if j >= i:
            j += 1
        return i, j

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> list[int]:
        perm = list(range(n))
        self.shuffle(perm)
        return perm

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from [0, n); falls back to draws with
        replacement when k > n."""
        if k > n:
            return [self.randrange(n) for _ in range(k)]
        picked: list[int] = []
        pool = list(range(n))
        for _ in range(k):
            idx = self.randrange(len(pool))
            picked.append(pool[idx])
            pool[idx] = pool[-1]
            pool.pop()
        return picked

    def getstate(self) -> int:
        return self._state

    def setstate(self, state: int) -> None:
        self._state = state & _MASK64
