"""Counter-based random streams shared by every simulator backend.

Each trial gets its own SplitMix64 stream whose starting state is a hash of
``(seed, trial)``. Trials can therefore run in any order, on any thread,
in any backend, and still consume identical random numbers. The Cython and
numpy kernels re-implement exactly these integer operations.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def trial_state(seed: int, trial: int) -> int:
    return mix64((seed ^ mix64(((trial + 1) * GOLDEN) & MASK64)) & MASK64)


class TrialStream:
    """Random stream for one Monte Carlo trial."""

    def __init__(self, seed: int, trial: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = trial_state(seed, trial)

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Integer in ``[0, n)`` by multiply-shift on the top 32 bits.

        The bias is at most ``n / 2**32``, irrelevant for libraries of a few
        thousand files, and the map has no rejection loop to vectorize.
        """
        return ((self.next_u64() >> 32) * n) >> 32
