"""Capacity-bound checks over simulation window series.

Three checks, all exact integer comparisons:

* per-window:   s_t <= m_t * tau_h + a_t for every window;
* time-average: sum(s_t) <= tau_h * sum(m_t) + sum(a_t);
* burst:        every prefix satisfies B_T <= tau_h * sum(m_t) + sum(a_t).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:  # pragma: no cover
    from .runner import WindowRow


@dataclass
class BoundReport:
    tau_h: int
    windows: int
    per_window_violations: list[dict]
    time_avg_ok: bool
    burst_ok: bool
    totals: dict

    @property
    def ok(self) -> bool:
        return not self.per_window_violations and self.time_avg_ok and self.burst_ok

    def summary(self) -> str:
        status = "OK" if self.ok else "VIOLATED"
        return (
            f"bounds {status}: tau_h={self.tau_h} windows={self.windows} "
            f"per-window violations={len(self.per_window_violations)} "
            f"time-avg={'ok' if self.time_avg_ok else 'VIOLATED'} "
            f"burst={'ok' if self.burst_ok else 'VIOLATED'}"
        )


def verify_bounds(rows: "Sequence[WindowRow]", tau_h: int) -> BoundReport:
    violations = []
    prefix_s = prefix_m = prefix_a = 0
    burst_ok = True
    for row in rows:
        limit = row.m_t * tau_h + row.a_t
        if row.s_t > limit:
            violations.append(
                {"window": row.window, "s_t": row.s_t, "limit": limit, "m_t": row.m_t, "a_t": row.a_t}
            )
        prefix_s += row.s_t
        prefix_m += row.m_t
        prefix_a += row.a_t
        if prefix_s > tau_h * prefix_m + prefix_a:
            burst_ok = False
    totals = {"s": prefix_s, "m": prefix_m, "a": prefix_a}
    time_avg_ok = prefix_s <= tau_h * prefix_m + prefix_a
    return BoundReport(
        tau_h=tau_h,
        windows=len(rows),
        per_window_violations=violations,
        time_avg_ok=time_avg_ok,
        burst_ok=burst_ok,
        totals=totals,
    )
