"""Seeded 64-bit linear congruential generator.

Multiplier and increment are Knuth's MMIX constants.  Outputs use the high
32 bits of the state, so sequences are reproducible in any language with
64-bit unsigned arithmetic.
"""

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1


class LCG64:
    def __init__(self, seed=0):
        self.state = seed & MASK

    def next_u32(self):
        self.state = (self.state * MULTIPLIER + INCREMENT) & MASK
        return self.state >> 32

    def randrange(self, n):
        """Uniform-ish integer in [0, n); plain modulo reduction, n < 2^32."""
        if n <= 0:
            raise ValueError("empty range")
        return self.next_u32() % n

    def randint(self, lo, hi):
        return lo + self.randrange(hi - lo + 1)

    def choice(self, seq):
        return seq[self.randrange(len(seq))]
