"""SplitMix64: a tiny, fully specified PRNG.

Used instead of :mod:`random` so that seeded systems and random scalars are
reproducible bit-for-bit from any language:

    state += 0x9E3779B97F4A7C15 (mod 2^64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB (mod 2^64)
    return z ^ (z >> 31)

Values in ``[0, n)`` are drawn by rejection so they are exactly uniform.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def nonzero_scalar(self, p: int) -> int:
        """Uniform element of ``[1, p - 1]``."""
        return 1 + self.below(p - 1)
