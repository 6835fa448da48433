"""Per-window activity ledgers and the cross-window activity series.

An identity is active in window t iff at least one of its challenges
bound to window t was accepted. Only protocol-core acceptance events
mutate solved counts; the series materializes empty ledgers so exported
window ranges have no gaps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable

from .protocol import ChallengeKey


def identity_to_wire(identity: bytes) -> str:
    """Readable, injective identity encoding for exports."""
    try:
        text = identity.decode("utf-8")
        if not text.startswith("hex:"):
            return text
    except UnicodeDecodeError:
        pass
    return "hex:" + identity.hex()


def wire_to_identity(text: str) -> bytes:
    if text.startswith("hex:"):
        return bytes.fromhex(text[4:])
    return text.encode("utf-8")


@dataclass
class WindowLedger:
    """Issued/solved tallies for one window."""

    window: int
    solved_counts: dict[bytes, int] = field(default_factory=dict)
    issued_counts: dict[bytes, int] = field(default_factory=dict)

    @property
    def active(self) -> set[bytes]:
        return {identity for identity, n in self.solved_counts.items() if n >= 1}

    @property
    def active_count(self) -> int:
        return len(self.active)


class ActivitySeries:
    """Materialized sequence of window ledgers plus series metrics."""

    def __init__(self) -> None:
        self._ledgers: dict[int, WindowLedger] = {}

    def touch(self, window: int) -> WindowLedger:
        ledger = self._ledgers.get(window)
        if ledger is None:
            ledger = self._ledgers[window] = WindowLedger(window)
        return ledger

    def record_issued(self, key: ChallengeKey) -> None:
        counts = self.touch(key.window).issued_counts
        counts[key.identity] = counts.get(key.identity, 0) + 1

    def record_accepted(self, key: ChallengeKey) -> None:
        counts = self.touch(key.window).solved_counts
        counts[key.identity] = counts.get(key.identity, 0) + 1

    def window_range(self) -> tuple[int, int] | None:
        if not self._ledgers:
            return None
        return min(self._ledgers), max(self._ledgers)

    def windows(self) -> list[WindowLedger]:
        """All ledgers from first to last touched window, gaps materialized."""
        span = self.window_range()
        if span is None:
            return []
        return [self.touch(w) for w in range(span[0], span[1] + 1)]

    def ledger(self, window: int) -> WindowLedger:
        return self._ledgers.get(window) or WindowLedger(window)

    def active_count(self, window: int) -> int:
        return self.ledger(window).active_count

    def active_series(self) -> list[int]:
        return [ledger.active_count for ledger in self.windows()]

    def identity_window_total(self, window_count: int | None = None) -> int:
        """Sum of per-window active counts over the first `window_count` windows."""
        series = self.active_series()
        if window_count is not None:
            series = series[:window_count]
        return sum(series)

    def solved_count(self, identity: bytes, window: int) -> int:
        return self.ledger(window).solved_counts.get(identity, 0)

    def export_jsonl(self, fp: IO[str]) -> None:
        for ledger in self.windows():
            row = {
                "window": ledger.window,
                "active": sorted(identity_to_wire(i) for i in ledger.active),
                "solved": {
                    identity_to_wire(i): n
                    for i, n in sorted(ledger.solved_counts.items())
                },
                "issued": {
                    identity_to_wire(i): n
                    for i, n in sorted(ledger.issued_counts.items())
                },
            }
            fp.write(json.dumps(row, sort_keys=True) + "\n")

    @classmethod
    def import_jsonl(cls, lines: Iterable[str]) -> "ActivitySeries":
        series = cls()
        for line in lines:
            if not line.strip():
                continue
            row = json.loads(line)
            ledger = series.touch(row["window"])
            ledger.solved_counts = {
                wire_to_identity(i): n for i, n in row["solved"].items()
            }
            ledger.issued_counts = {
                wire_to_identity(i): n for i, n in row["issued"].items()
            }
        return series

    def equals(self, other: "ActivitySeries") -> bool:
        mine, theirs = self.windows(), other.windows()
        if len(mine) != len(theirs):
            return False
        return all(
            a.window == b.window
            and a.solved_counts == b.solved_counts
            and a.issued_counts == b.issued_counts
            for a, b in zip(mine, theirs)
        )
