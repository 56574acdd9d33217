"""Deterministic 64-bit generator for reproducible randomized runs.

The generator is splitmix64 with the usual constants:

    state += 0x9E3779B97F4A7C15              (mod 2^64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB (mod 2^64)
    output = z ^ (z >> 31)

Bounded draws use plain modulo reduction (`next_u64() % n`).  The modulo
bias is below n / 2^64 and irrelevant at the sizes used here; the point of
fixing the reduction is that equal seeds give bit-identical runs anywhere.
"""

_MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, n: int) -> int:
        """Draw from [0, n). n must be positive."""
        if n <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % n
