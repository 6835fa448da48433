"""Pure-Python kernels: deterministic PRNG, grid builders, trace coverage.

The native module (`_native.pyx`) implements the same functions with the
same bit-exact semantics; parity is enforced by tests. Keep both in sync.
"""

from __future__ import annotations

_M64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    # splitmix64 output function
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _M64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _M64
    return z ^ (z >> 31)


class Rng:
    """splitmix64 stream seeded by folding a 32-byte seed into the state."""

    __slots__ = ("_state",)

    def __init__(self, seed: bytes):
        if len(seed) < 32:
            seed = seed.ljust(32, b"\0")
        state = 0
        for i in range(4):
            lane = int.from_bytes(seed[8 * i : 8 * i + 8], "big")
            state = _finalize((state + lane) & _M64)
        self._state = state

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _M64
        return _finalize(self._state)

    def below(self, n: int) -> int:
        """Unbiased draw from [0, n) by rejection."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        limit = _M64 + 1 - ((_M64 + 1) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def bits(self, n: int) -> bytes:
        """n cells of 0/1, consuming 64 cells per draw, LSB first."""
        out = bytearray(n)
        i = 0
        while i < n:
            word = self.next_u64()
            take = min(64, n - i)
            for j in range(take):
                out[i + j] = (word >> j) & 1
            i += take
        return bytes(out)

    def sample_distinct(self, n: int, k: int) -> list[int]:
        """First k entries of a Fisher-Yates shuffle of range(n)."""
        if not 0 <= k <= n:
            raise ValueError("sample_distinct() needs 0 <= k <= n")
        overlay: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.below(n - i)
            vi = overlay.get(i, i)
            vj = overlay.get(j, j)
            overlay[i] = vj
            overlay[j] = vi
            out.append(vj)
        return out


def hamming(a: bytes, b: bytes) -> int:
    """Count of differing positions between equal-length cell buffers."""
    if len(a) != len(b):
        raise ValueError("hamming() needs equal lengths")
    return sum(x != y for x, y in zip(a, b))


def _flipped(cells: bytes, positions: list[int]) -> bytes:
    out = bytearray(cells)
    for p in positions:
        out[p] ^= 1
    return bytes(out)


def perceptual_grids(
    seed: bytes,
    n_cells: int,
    k: int,
    distort_cells: int,
    distractor_min: int,
    distractor_max: int,
) -> tuple[bytes, list[bytes], int]:
    """Build a base grid, k candidate grids and the correct answer index.

    The correct candidate differs from the base in exactly distort_cells
    cells; every distractor differs from the correct candidate in a count
    drawn from [distractor_min, distractor_max].
    """
    rng = Rng(seed)
    base = rng.bits(n_cells)
    answer = rng.below(k)
    correct = _flipped(base, rng.sample_distinct(n_cells, distort_cells))
    candidates: list[bytes] = []
    for i in range(k):
        if i == answer:
            candidates.append(correct)
        else:
            count = distractor_min + rng.below(distractor_max - distractor_min + 1)
            candidates.append(_flipped(correct, rng.sample_distinct(n_cells, count)))
    return base, candidates, answer


def attention_hits(
    path: list[tuple[float, float, float]],
    samples: list[tuple[float, float, float]],
    rho: float,
) -> int:
    """Count samples within rho of the piecewise-linear path at their times.

    Pre: path times strictly increasing; sample times non-decreasing and
    within [path[0].t, path[-1].t].
    """
    hits = 0
    seg = 0
    last = len(path) - 2
    rho2 = rho * rho
    for t, x, y in samples:
        while seg < last and t > path[seg + 1][0]:
            seg += 1
        t0, x0, y0 = path[seg]
        t1, x1, y1 = path[seg + 1]
        frac = (t - t0) / (t1 - t0)
        px = x0 + frac * (x1 - x0)
        py = y0 + frac * (y1 - y0)
        dx = x - px
        dy = y - py
        if dx * dx + dy * dy <= rho2:
            hits += 1
    return hits
