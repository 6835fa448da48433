"""Human-availability schedules m_t: constant, seasonal, burst.

The seasonal schedule is an integer triangle wave whose offsets sum to
exactly zero over each period, so the schedule mean equals the base for
any horizon that is a whole number of periods.
"""

from __future__ import annotations

from ..errors import InvalidConfigError

SCHEDULE_KINDS = ("constant", "seasonal", "burst")


def _triangle_offsets(amplitude: int, period: int) -> list[int]:
    if period < 4 or period % 4 != 0:
        raise InvalidConfigError("seasonal period must be a positive multiple of 4")
    if (4 * amplitude) % period != 0:
        raise InvalidConfigError("seasonal amplitude*4 must be divisible by the period")
    quarter = period // 4
    step = 4 * amplitude // period
    rising = [i * step for i in range(quarter)]
    falling = [amplitude - i * step for i in range(quarter)]
    return rising + falling + [-v for v in rising] + [-v for v in falling]


class Schedule:
    """Window-indexed m_t with an exact rational mean over its period."""

    def __init__(self, spec: dict):
        if not isinstance(spec, dict) or spec.get("kind") not in SCHEDULE_KINDS:
            raise InvalidConfigError(f"m_schedule.kind must be one of {SCHEDULE_KINDS}")
        self.spec = dict(spec)
        kind = spec["kind"]
        if kind == "constant":
            m = spec.get("m")
            if not isinstance(m, int) or m < 0:
                raise InvalidConfigError("constant schedule needs integer m >= 0")
            self._values = [m]
        elif kind == "seasonal":
            base = spec.get("base")
            amplitude = spec.get("amplitude", 0)
            period = spec.get("period", 20)
            if not isinstance(base, int) or base < 0:
                raise InvalidConfigError("seasonal schedule needs integer base >= 0")
            if not isinstance(amplitude, int) or not 0 <= amplitude <= base:
                raise InvalidConfigError("seasonal amplitude must be in [0, base]")
            self._values = [base + off for off in _triangle_offsets(amplitude, period)]
        else:
            lo, hi = spec.get("lo"), spec.get("hi")
            period = spec.get("period", 50)
            burst_len = spec.get("burst_len", 5)
            if not all(isinstance(v, int) for v in (lo, hi, period, burst_len)):
                raise InvalidConfigError("burst schedule needs integer lo/hi/period/burst_len")
            if not (0 <= lo <= hi and 0 < burst_len <= period):
                raise InvalidConfigError("burst schedule needs 0 <= lo <= hi, 0 < burst_len <= period")
            self._values = [hi if i < burst_len else lo for i in range(period)]

    def __call__(self, window: int) -> int:
        return self._values[window % len(self._values)]

    def mean(self, windows: int) -> float:
        return sum(self(t) for t in range(windows)) / windows

    def max_value(self) -> int:
        return max(self._values)
