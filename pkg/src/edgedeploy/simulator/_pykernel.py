"""Pure numpy kernel, vectorized across trials.

Consumes the per-trial SplitMix64 streams exactly like the reference
pipeline and the compiled kernel, so all three agree to the last bit.
"""

import numpy as np

from .rng import GOLDEN, MIX1, MIX2

NAME = "python"

_BLOCK = 1024


def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


class _Streams:
    def __init__(self, seed, trials):
        t = trials.astype(np.uint64) + np.uint64(1)
        self.state = _mix64(np.uint64(seed) ^ _mix64(t * np.uint64(GOLDEN)))

    def below(self, n):
        self.state = self.state + np.uint64(GOLDEN)
        z = _mix64(self.state)
        return ((z >> np.uint64(32)) * np.uint64(n)) >> np.uint64(32)


def _partial_shuffle(streams, rows, n, k):
    perm = np.tile(np.arange(n, dtype=np.int32), (len(rows), 1))
    for i in range(k):
        r = (streams.below(n - i) + np.uint64(i)).astype(np.intp)
        head = perm[:, i].copy()
        perm[:, i] = perm[rows, r]
        perm[rows, r] = head
    return perm[:, :k]


def simulate_block(seed, start, count, n_files, n_cached, whole_file, mu, file_length,
                   coop_reach, eh_rate, cloud_rate, coop_rates, wb_rate, norm, out):
    M = out.shape[1]
    half = (coop_reach - 1) // 2
    coop_rates = np.asarray(coop_rates, dtype=np.float64)
    np_seterr = np.seterr(over="ignore")
    try:
        for lo in range(0, count, _BLOCK):
            hi = min(count, lo + _BLOCK)
            rows = np.arange(hi - lo)
            streams = _Streams(seed, np.arange(start + lo, start + hi))
            if whole_file:
                in_cache = np.zeros((len(rows), n_files), dtype=bool)
                in_cache[rows[:, None], _partial_shuffle(streams, rows, n_files, n_cached)] = True
            requests = _partial_shuffle(streams, rows, n_files, M)
            if whole_file:
                frac = in_cache[rows[:, None], requests].astype(np.float64)
            else:
                frac = np.full((len(rows), M), mu, dtype=np.float64)

            cached = frac * file_length
            uncached = file_length - cached
            combined = np.zeros_like(cached)
            users = np.arange(M)
            for offset in range(-half, half + 1):
                combined += cached[:, (users + offset) % M]
            total = combined / eh_rate + uncached / cloud_rate + cached / coop_rates + uncached / wb_rate
            out[lo:hi] = total / norm
    finally:
        np.seterr(**np_seterr)
