"""Canonical encodings shared by the protocol and wire layers.

Two encodings are fixed by contract:

* a length-prefixed byte encoding used for MAC inputs: every field is
  prefixed with its 4-byte big-endian length; integer fields are encoded
  as 8-byte big-endian before prefixing;
* a canonical JSON form used for prompt payloads and reports: sorted
  keys, no whitespace.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

_U64_MAX = (1 << 64) - 1


def encode_fields(*fields: bytes | int) -> bytes:
    """Length-prefixed canonical byte encoding of a field sequence.

    The encoding is injective for a fixed field count: no two distinct
    field tuples produce the same byte string.
    """
    out = bytearray()
    for field in fields:
        if isinstance(field, bool):
            raise TypeError("bool is not an encodable field")
        if isinstance(field, int):
            if not 0 <= field <= _U64_MAX:
                raise ValueError(f"integer field out of u64 range: {field}")
            field = field.to_bytes(8, "big")
        elif not isinstance(field, (bytes, bytearray)):
            raise TypeError(f"unsupported field type: {type(field).__name__}")
        out += len(field).to_bytes(4, "big")
        out += bytes(field)
    return bytes(out)


def canonical_json(obj: Any) -> str:
    """Canonical JSON: sorted keys, no whitespace, no NaN/Infinity."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def payload_digest(payload: dict) -> bytes:
    """SHA-256 digest of a payload's canonical JSON serialization."""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).digest()
