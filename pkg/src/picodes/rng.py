"""Deterministic 64-bit generator used everywhere randomness is needed.

SplitMix64: state advances by the golden-ratio increment and each output
is a finalizer over the new state. Chosen because the whole algorithm
fits in a dozen lines, so experiment seeds stay reproducible across
machines and library versions; numpy's generators make no such cross-
version promise.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """Seeded stream of uniform 64-bit integers."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection so there is no modulo bias."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = _MASK + 1 - ((_MASK + 1) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def sample(self, n: int, count: int) -> list[int]:
        """`count` distinct integers from [0, n), order randomized."""
        if count > n:
            raise ValueError(f"cannot sample {count} distinct values from range({n})")
        pool = list(range(n))
        for i in range(count):
            j = i + self.next_below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:count]
