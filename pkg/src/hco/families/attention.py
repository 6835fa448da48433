"""Attention tracking: follow a moving target along a piecewise-linear path.

The prompt publishes the path (waypoints in the unit square with
timestamps over a fixed duration); the answer is a pointer trace. The
trace passes when at least `coverage` of its samples lie within
`tolerance` of the path position at the sample's own timestamp. A trace
must carry >= 10 samples per second of duration to be judgeable.
"""

from __future__ import annotations

import math

from .. import _kernels

FAMILY_ID = "attention"

DURATION_MS = 5_000
TOLERANCE = 0.08
COVERAGE = 0.8
MIN_RATE_HZ = 10
REFERENCE_RATE_HZ = 20

# Waypoints stay on an interior lattice so that any trace pinned to a
# corner of the unit square is always out of tolerance.
_LATTICE = 10_000
_COORD_LO = 1_000
_COORD_HI = 9_000


def build(seed: bytes, difficulty: int = 1) -> tuple[dict, dict]:
    rng = _kernels.Rng(seed)
    points = min(4 + max(1, difficulty), 12)
    path = []
    for i in range(points):
        t = (i * DURATION_MS) // (points - 1)
        x = (_COORD_LO + rng.below(_COORD_HI - _COORD_LO + 1)) / _LATTICE
        y = (_COORD_LO + rng.below(_COORD_HI - _COORD_LO + 1)) / _LATTICE
        path.append([t, x, y])
    payload = {
        "family": FAMILY_ID,
        "path": path,
        "duration_ms": DURATION_MS,
        "tolerance": TOLERANCE,
        "coverage": COVERAGE,
    }
    return payload, reference_answer(payload)


def _point_at(path: list[list[float]], t: float) -> tuple[float, float]:
    seg = 0
    while seg < len(path) - 2 and t > path[seg + 1][0]:
        seg += 1
    t0, x0, y0 = path[seg]
    t1, x1, y1 = path[seg + 1]
    frac = (t - t0) / (t1 - t0)
    return x0 + frac * (x1 - x0), y0 + frac * (y1 - y0)


def _real(v: object) -> bool:
    return not isinstance(v, bool) and isinstance(v, (int, float)) and math.isfinite(v)


def verify(payload: dict, answer: object) -> bool:
    path = payload.get("path")
    duration = payload.get("duration_ms")
    tolerance = payload.get("tolerance")
    coverage = payload.get("coverage")
    if not (
        isinstance(path, list)
        and len(path) >= 2
        and all(isinstance(p, list) and len(p) == 3 and all(_real(v) for v in p) for p in path)
        and _real(duration)
        and _real(tolerance)
        and _real(coverage)
    ):
        return False
    if not isinstance(answer, dict):
        return False
    samples = answer.get("samples")
    if not isinstance(samples, list):
        return False
    min_samples = math.ceil(duration / 1000 * MIN_RATE_HZ)
    if len(samples) < min_samples:
        return False
    prev = -1.0
    for sample in samples:
        if not (isinstance(sample, list) and len(sample) == 3 and all(_real(v) for v in sample)):
            return False
        t = sample[0]
        if t <= prev or t < 0 or t > duration:
            return False
        prev = t
    triples = [(float(p[0]), float(p[1]), float(p[2])) for p in path]
    points = [(float(s[0]), float(s[1]), float(s[2])) for s in samples]
    hits = _kernels.attention_hits(triples, points, float(tolerance))
    return hits >= coverage * len(points)


def reference_answer(payload: dict) -> dict:
    step = 1000 // REFERENCE_RATE_HZ
    samples = []
    for t in range(0, payload["duration_ms"] + 1, step):
        x, y = _point_at(payload["path"], t)
        samples.append([t, x, y])
    return {"samples": samples}


def wrong_answer(payload: dict) -> dict:
    step = 1000 // REFERENCE_RATE_HZ
    samples = [[t, 0.0, 0.0] for t in range(0, payload["duration_ms"] + 1, step)]
    return {"samples": samples}


def wrong_candidates(payload: dict) -> list[dict]:
    return [wrong_answer(payload)]
