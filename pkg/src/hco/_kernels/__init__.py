"""Kernel backend selection: compiled extension if available, else pure Python.

Set HCO_PURE_PYTHON=1 to force the fallback. `BACKEND` names the active
implementation ("native" or "pure"); both expose the same functions with
bit-exact behavior (enforced by parity tests).
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("HCO_PURE_PYTHON") == "1":
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

Rng = _impl.Rng
hamming = _impl.hamming
perceptual_grids = _impl.perceptual_grids
attention_hits = _impl.attention_hits

__all__ = ["BACKEND", "Rng", "hamming", "perceptual_grids", "attention_hits"]
