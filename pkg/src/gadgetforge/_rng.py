"""Splittable counter-based PRNG (SplitMix64).

Every random choice in the package flows through streams derived from a
master seed plus a stream index, so a run is reproducible bit-for-bit from
the seed alone and independent of evaluation order or worker count.  The
same mixing constants are baked into the numba kernels; the pure-Python
class below and the kernels produce identical u64 sequences.
"""

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer; bijective on u64."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def stream_state(master_seed: int, stream: int) -> int:
    """Initial SplitMix64 state for sub-stream `stream` of `master_seed`."""
    return mix64((master_seed & MASK64) ^ mix64((stream * _GAMMA + 1) & MASK64))


class Stream:
    """One SplitMix64 stream: u64s, bounded ints, bits, subset samples."""

    __slots__ = ("state",)

    def __init__(self, master_seed: int, stream: int = 0):
        self.state = stream_state(master_seed, stream)

    def u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection; unbiased for n < 2^64."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        threshold = ((1 << 64) - n) % n  # == 2^64 mod n
        while True:
            r = self.u64()
            if r >= threshold:
                return r % n

    def bits(self, k: int) -> int:
        """k uniform bits as an integer (k may exceed 64)."""
        out = 0
        got = 0
        while got < k:
            take = min(64, k - got)
            out |= (self.u64() & ((1 << take) - 1)) << got
            got += take
        return out

    def subset(self, n: int, t: int) -> list:
        """Sorted uniform t-subset of range(n) via partial Fisher-Yates."""
        if not 0 <= t <= n:
            raise ValueError(f"subset size {t} out of range for n={n}")
        arr = list(range(n))
        for i in range(t):
            j = i + self.below(n - i)
            arr[i], arr[j] = arr[j], arr[i]
        return sorted(arr[:t])

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1):
            j = i + self.below(len(items) - i)
            items[i], items[j] = items[j], items[i]
        return items
