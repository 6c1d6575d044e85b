# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: one trial at a time, GIL released for the whole block."""

from libc.stdint cimport uint64_t, int32_t
from libc.stdlib cimport malloc, free

NAME = "cython"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX2 = 0x94D049BB133111EBULL


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline uint64_t below(uint64_t* state, uint64_t n) noexcept nogil:
    state[0] += GOLDEN
    return ((mix64(state[0]) >> 32) * n) >> 32


cdef inline void partial_shuffle(int32_t* perm, Py_ssize_t n, Py_ssize_t k,
                                 uint64_t* state) noexcept nogil:
    cdef Py_ssize_t i, r
    cdef int32_t tmp
    for i in range(n):
        perm[i] = <int32_t>i
    for i in range(k):
        r = i + <Py_ssize_t>below(state, <uint64_t>(n - i))
        tmp = perm[i]
        perm[i] = perm[r]
        perm[r] = tmp


def simulate_block(uint64_t seed, Py_ssize_t start, Py_ssize_t count, Py_ssize_t n_files,
                   Py_ssize_t n_cached, bint whole_file, double mu, double file_length,
                   int coop_reach, double eh_rate, double cloud_rate,
                   const double[::1] coop_rates, double wb_rate, double norm,
                   double[:, ::1] out):
    cdef Py_ssize_t M = out.shape[1]
    cdef Py_ssize_t half = (coop_reach - 1) // 2
    cdef Py_ssize_t t, i, k, o, idx
    cdef uint64_t state
    cdef double combined, c, u, total

    if out.shape[0] != count or coop_rates.shape[0] != M:
        raise ValueError("output block or rate vector has the wrong shape")

    cdef int32_t* perm = <int32_t*>malloc(n_files * sizeof(int32_t))
    cdef char* in_cache = <char*>malloc(n_files * sizeof(char))
    cdef double* cached = <double*>malloc(M * sizeof(double))
    cdef double* uncached = <double*>malloc(M * sizeof(double))
    if perm == NULL or in_cache == NULL or cached == NULL or uncached == NULL:
        free(perm); free(in_cache); free(cached); free(uncached)
        raise MemoryError()

    try:
        with nogil:
            for t in range(count):
                state = mix64(seed ^ mix64(<uint64_t>(start + t + 1) * GOLDEN))
                if whole_file:
                    for i in range(n_files):
                        in_cache[i] = 0
                    partial_shuffle(perm, n_files, n_cached, &state)
                    for i in range(n_cached):
                        in_cache[perm[i]] = 1
                partial_shuffle(perm, n_files, M, &state)
                for k in range(M):
                    if whole_file:
                        c = (1.0 if in_cache[perm[k]] else 0.0) * file_length
                    else:
                        c = mu * file_length
                    cached[k] = c
                    uncached[k] = file_length - c
                for k in range(M):
                    combined = 0.0
                    for o in range(-half, half + 1):
                        idx = (k + o + M) % M
                        combined = combined + cached[idx]
                    total = (combined / eh_rate + uncached[k] / cloud_rate
                             + cached[k] / coop_rates[k] + uncached[k] / wb_rate)
                    out[t, k] = total / norm
    finally:
        free(perm); free(in_cache); free(cached); free(uncached)
