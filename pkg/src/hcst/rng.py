"""Deterministic pseudo-random number generation.

All sampling in the toolkit goes through SplitMix64 so that experiment
vectors are reproducible bit-for-bit across platforms and Python versions.
The generator is the public-domain splitmix64 algorithm (Steele, Lea and
Flood; also used as the seeder of xoshiro): a 64-bit counter advanced by the
golden-gamma constant, output mixed by two xor-multiply rounds.
"""

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """splitmix64 stream over a 64-bit state."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform-ish integer in [0, n). Modulo bias is irrelevant here: n is
        tiny compared to 2**64 and determinism is the requirement."""
        if n <= 0:
            raise ValueError("randrange() requires n >= 1")
        return self.next_u64() % n

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi], both ends inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.randrange(hi - lo + 1)

    def sample(self, pool, k: int) -> list:
        """k distinct elements drawn from pool by partial Fisher-Yates.

        The pool order matters for determinism; callers pass sorted input.
        """
        items = list(pool)
        if k > len(items):
            raise ValueError("sample size exceeds population")
        for i in range(k):
            j = i + self.randrange(len(items) - i)
            items[i], items[j] = items[j], items[i]
        return items[:k]
