# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native kernels: bit-exact mirror of `_pure` (see that module's docstring)."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15U
cdef uint64_t U64_MAX = 0xFFFFFFFFFFFFFFFFU


cdef inline uint64_t _finalize(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9U
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBU
    return z ^ (z >> 31)


cdef class Rng:
    """splitmix64 stream seeded by folding a 32-byte seed into the state."""

    cdef uint64_t _state

    def __init__(self, seed: bytes):
        cdef bytes padded = seed if len(seed) >= 32 else seed.ljust(32, b"\0")
        cdef const unsigned char *buf = padded
        cdef uint64_t state = 0
        cdef uint64_t lane
        cdef int i, j
        for i in range(4):
            lane = 0
            for j in range(8):
                lane = (lane << 8) | buf[8 * i + j]
            state = _finalize(state + lane)
        self._state = state

    cdef inline uint64_t _next(self) nogil:
        self._state += GOLDEN
        return _finalize(self._state)

    def next_u64(self):
        return self._next()

    cdef inline uint64_t _below(self, uint64_t n):
        # Unbiased rejection draw; accept v when v <= U64_MAX - (2^64 mod n).
        cdef uint64_t rem = (U64_MAX % n + 1) % n
        cdef uint64_t v
        while True:
            v = self._next()
            if v <= U64_MAX - rem:
                return v % n

    def below(self, n):
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        return self._below(<uint64_t> n)

    def bits(self, n):
        cdef int count = n
        cdef unsigned char *out = <unsigned char *> malloc(count if count else 1)
        cdef int i = 0, j, take
        cdef uint64_t word
        try:
            while i < count:
                word = self._next()
                take = 64 if count - i > 64 else count - i
                for j in range(take):
                    out[i + j] = <unsigned char> ((word >> j) & 1)
                i += take
            return out[:count]
        finally:
            free(out)

    def sample_distinct(self, n, k):
        if not 0 <= k <= n:
            raise ValueError("sample_distinct() needs 0 <= k <= n")
        return self._sample_distinct(<int> n, <int> k)

    cdef list _sample_distinct(self, int n, int k):
        cdef int *perm = <int *> malloc(n * sizeof(int) if n else sizeof(int))
        cdef int i, j, tmp
        cdef list out = []
        try:
            for i in range(n):
                perm[i] = i
            for i in range(k):
                j = i + <int> self._below(<uint64_t> (n - i))
                tmp = perm[i]
                perm[i] = perm[j]
                perm[j] = tmp
                out.append(perm[i])
            return out
        finally:
            free(perm)


def hamming(a: bytes, b: bytes):
    if len(a) != len(b):
        raise ValueError("hamming() needs equal lengths")
    cdef const unsigned char *pa = a
    cdef const unsigned char *pb = b
    cdef Py_ssize_t i, n = len(a)
    cdef int acc = 0
    for i in range(n):
        if pa[i] != pb[i]:
            acc += 1
    return acc


def perceptual_grids(seed: bytes, n_cells, k, distort_cells, distractor_min, distractor_max):
    """See `_pure.perceptual_grids`."""
    cdef Rng rng = Rng(seed)
    cdef int n = n_cells, kk = k, i, p, count
    cdef bytes base = rng.bits(n)
    cdef int answer = <int> rng._below(<uint64_t> kk)
    cdef unsigned char *work = <unsigned char *> malloc(n if n else 1)
    cdef const unsigned char *src = base
    cdef list candidates = []
    cdef list cells
    cdef bytes correct
    try:
        for i in range(n):
            work[i] = src[i]
        for p in rng._sample_distinct(n, distort_cells):
            work[p] ^= 1
        correct = work[:n]
        for i in range(kk):
            if i == answer:
                candidates.append(correct)
                continue
            count = distractor_min + <int> rng._below(<uint64_t> (distractor_max - distractor_min + 1))
            cells = rng._sample_distinct(n, count)
            for p in cells:
                work[p] ^= 1
            candidates.append(work[:n])
            for p in cells:  # restore the correct candidate for the next slot
                work[p] ^= 1
        return base, candidates, answer
    finally:
        free(work)


def attention_hits(path, samples, rho):
    """See `_pure.attention_hits`."""
    cdef Py_ssize_t n_path = len(path), n_samp = len(samples), i
    cdef double *pt = <double *> malloc(3 * n_path * sizeof(double))
    cdef double rho2 = <double> rho * <double> rho
    cdef double t, x, y, t0, x0, y0, t1, x1, y1, frac, px, py, dx, dy
    cdef Py_ssize_t seg = 0, last = n_path - 2
    cdef int hits = 0
    try:
        for i in range(n_path):
            pt[3 * i] = path[i][0]
            pt[3 * i + 1] = path[i][1]
            pt[3 * i + 2] = path[i][2]
        for i in range(n_samp):
            t = samples[i][0]
            x = samples[i][1]
            y = samples[i][2]
            while seg < last and t > pt[3 * (seg + 1)]:
                seg += 1
            t0 = pt[3 * seg]
            x0 = pt[3 * seg + 1]
            y0 = pt[3 * seg + 2]
            t1 = pt[3 * seg + 3]
            x1 = pt[3 * seg + 4]
            y1 = pt[3 * seg + 5]
            frac = (t - t0) / (t1 - t0)
            px = x0 + frac * (x1 - x0)
            py = y0 + frac * (y1 - y0)
            dx = x - px
            dy = y - py
            if dx * dx + dy * dy <= rho2:
                hits += 1
        return hits
    finally:
        free(pt)
