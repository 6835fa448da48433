"""Perceptual matching: pick the candidate grid derived from the base grid.

The base pattern is a 16x16 binary grid. The correct candidate is the base
with a small fraction of cells flipped; distractors are heavy re-flips of
the correct candidate, kept at least 25% of cells away from it so the
answer stays unambiguous (the correct candidate is the unique candidate
nearest the base).
"""

from __future__ import annotations

from .. import _kernels

FAMILY_ID = "perceptual"

GRID_W = 16
GRID_H = 16
CANDIDATES = 6

# Distractors must stay >= 25% of cells from the correct candidate; the
# distortion cap keeps nearest-to-base decoding unambiguous (see verify).
_DISTRACTOR_MIN_FRAC = 0.30
_DISTRACTOR_MAX_FRAC = 0.50
_MIN_SEPARATION_FRAC = 0.25


def _distortion_cells(difficulty: int, n_cells: int) -> int:
    frac = min(0.10 + 0.02 * (difficulty - 1), 0.14)
    return max(1, round(frac * n_cells))


def _rows(cells: bytes) -> list[str]:
    return [
        "".join("1" if c else "0" for c in cells[r * GRID_W : (r + 1) * GRID_W])
        for r in range(GRID_H)
    ]


def _cells(rows: list[str]) -> bytes:
    return bytes(1 if ch == "1" else 0 for row in rows for ch in row)


def build(
    seed: bytes,
    difficulty: int = 1,
    *,
    distractor_min_frac: float = _DISTRACTOR_MIN_FRAC,
    distractor_max_frac: float = _DISTRACTOR_MAX_FRAC,
) -> tuple[dict, int]:
    """Build (payload, answer). The frac overrides exist for fault injection."""
    n = GRID_W * GRID_H
    base, candidates, answer = _kernels.perceptual_grids(
        seed,
        n,
        CANDIDATES,
        _distortion_cells(difficulty, n),
        round(distractor_min_frac * n),
        round(distractor_max_frac * n),
    )
    payload = {
        "family": FAMILY_ID,
        "grid": _rows(base),
        "candidates": [_rows(c) for c in candidates],
    }
    return payload, answer


def _well_formed(payload: dict) -> bool:
    grid = payload.get("grid")
    candidates = payload.get("candidates")
    if not isinstance(grid, list) or not isinstance(candidates, list) or not candidates:
        return False
    def grid_ok(rows: object) -> bool:
        return (
            isinstance(rows, list)
            and len(rows) == GRID_H
            and all(
                isinstance(r, str) and len(r) == GRID_W and set(r) <= {"0", "1"}
                for r in rows
            )
        )
    return grid_ok(grid) and all(grid_ok(c) for c in candidates)


def verify(payload: dict, answer: object) -> bool:
    """Accept iff answer indexes the unique candidate nearest the base grid."""
    if isinstance(answer, bool) or not isinstance(answer, int):
        return False
    if not _well_formed(payload):
        return False
    base = _cells(payload["grid"])
    distances = [_kernels.hamming(_cells(c), base) for c in payload["candidates"]]
    best = min(distances)
    if distances.count(best) != 1:
        return False
    return answer == distances.index(best)


def reference_answer(payload: dict) -> int:
    base = _cells(payload["grid"])
    distances = [_kernels.hamming(_cells(c), base) for c in payload["candidates"]]
    return distances.index(min(distances))


def wrong_answer(payload: dict) -> int:
    return (reference_answer(payload) + 1) % len(payload["candidates"])


def wrong_candidates(payload: dict) -> list[int]:
    right = reference_answer(payload)
    return [i for i in range(len(payload["candidates"])) if i != right]


def separation_ok(payload: dict) -> bool:
    """True iff every distractor is >= 25% of cells from the correct candidate."""
    correct = _cells(payload["candidates"][reference_answer(payload)])
    n = len(correct)
    floor = _MIN_SEPARATION_FRAC * n
    return all(
        _kernels.hamming(_cells(c), correct) >= floor
        for i, c in enumerate(payload["candidates"])
        if i != reference_answer(payload)
    )
