"""Discrete-time Sybil adversary simulation.

Every solution attempt — human or automated — flows through the real
protocol core: challenges are issued, answered, and verified with the
full binding/deadline/replay pipeline. Nothing in the simulator marks an
identity active except an accepted verification.

Timeline model per window t (duration W, wall span [tW, (t+1)W)):

* The m_t humans hired for window t work only inside that span, strictly
  serially; a solve whose sampled duration would cross the window end is
  abandoned (it consumes the human for the window and issues nothing).
* Automated attempts (strategies with automation) fire once per identity
  at the window start; a modeled success submits the correct answer at
  start + latency, a failure submits a wrong answer.
* Greedy allocation: a free human picks the lowest-index identity that is
  neither active, nor currently claimed by an in-flight attempt, nor
  issuance-capped. Attempt outcomes apply at completion time.
"""

from __future__ import annotations

import csv
import hashlib
import heapq
import io
import random
from dataclasses import dataclass, field
from typing import IO

from ..encoding import canonical_json
from ..errors import RateLimitedError
from ..families import FamilyRegistry
from ..protocol import ChallengeResponse, OracleConfig, OracleCore, Verdict
from ..registry import ActivitySeries
from .bounds import verify_bounds
from .config import AdversaryConfig

CSV_HEADER = ["window", "s_t", "m_t", "a_t", "cost"]

_COMPLETE, _READY = 0, 1  # event priority: completions resolve first


@dataclass
class WindowRow:
    window: int
    s_t: int
    m_t: int
    a_t: int
    cost: float


@dataclass
class SimulationReport:
    config: dict
    rows: list[WindowRow]
    metrics: dict
    debug: dict | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "windows": [
                {"window": r.window, "s_t": r.s_t, "m_t": r.m_t, "a_t": r.a_t, "cost": r.cost}
                for r in self.rows
            ],
            "metrics": self.metrics,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def write_csv(self, fp: IO[str]) -> None:
        writer = csv.writer(fp)
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([r.window, r.s_t, r.m_t, r.a_t, r.cost])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _sim_secret(seed: int) -> bytes:
    return hashlib.sha256(b"sim-oracle-secret" + seed.to_bytes(8, "big", signed=True)).digest()


def run_simulation(
    cfg: AdversaryConfig,
    families: FamilyRegistry | None = None,
    *,
    debug: bool = False,
) -> SimulationReport:
    """Run the configured adversary; identical (config, seed) gives a
    byte-identical report."""
    families = families or FamilyRegistry.default()
    schedule = cfg.schedule()
    human = cfg.human_model(families)
    auto = cfg.auto_model(families)
    rng = random.Random(cfg.seed)

    series = ActivitySeries()
    core = OracleCore(
        OracleConfig(
            secret=_sim_secret(cfg.seed),
            window_ms=cfg.window_ms,
            issuance_cap=cfg.issuance_cap,
        ),
        families,
        nonce_source=rng.randbytes,
        on_issued=series.record_issued,
        on_accepted=series.record_accepted,
    )

    identities = [f"id-{i:06d}".encode() for i in range(cfg.s)]
    uses_automation = cfg.strategy in ("automation_only", "hybrid")
    uses_humans = cfg.strategy != "automation_only"
    extra_latency = cfg.relay_extra_latency_ms if cfg.strategy == "relay" else 0

    window_ms = cfg.window_ms
    rows: list[WindowRow] = []
    human_solves: dict[tuple[int, int], int] = {}  # (window, human) -> accepted solves
    auto_attempts_total = 0

    for t in range(cfg.windows):
        start = t * window_ms
        end = start + window_ms
        series.touch(t)
        m_t = schedule(t)
        a_t = 0
        auto_attempts = 0
        active: set[int] = set()
        capped: set[int] = set()

        if uses_automation:
            for idx in range(cfg.s):
                try:
                    envelope = core.issue(identities[idx], cfg.family, start)
                except RateLimitedError:
                    capped.add(idx)
                    continue
                auto_attempts += 1
                latency = auto.sample_latency_ms(rng)
                success = auto.draw_success(rng)
                payload = envelope.prompt.payload
                answer = (
                    families.reference_answer(cfg.family, payload)
                    if success
                    else families.wrong_answer(cfg.family, payload)
                )
                submitted = start + latency
                outcome = core.verify(
                    ChallengeResponse(envelope.key, answer, submitted, envelope.binding_tag),
                    now=submitted,
                )
                if outcome.verdict is Verdict.ACCEPTED:
                    a_t += 1
                    active.add(idx)

        if uses_humans and m_t > 0 and cfg.s > 0:
            claimed: set[int] = set()
            seq = 0
            events: list[tuple[int, int, int, int, tuple | None]] = [
                (start, _READY, i, i, None) for i in range(m_t)
            ]
            seq = m_t
            while events:
                at, kind, _, h, attempt = heapq.heappop(events)
                if kind == _COMPLETE:
                    idx, envelope, ok = attempt
                    payload = envelope.prompt.payload
                    answer = (
                        families.reference_answer(cfg.family, payload)
                        if ok
                        else families.wrong_answer(cfg.family, payload)
                    )
                    submitted = at + extra_latency
                    outcome = core.verify(
                        ChallengeResponse(envelope.key, answer, submitted, envelope.binding_tag),
                        now=submitted,
                    )
                    claimed.discard(idx)
                    if outcome.verdict is Verdict.ACCEPTED:
                        active.add(idx)
                        key = (t, h)
                        human_solves[key] = human_solves.get(key, 0) + 1
                    heapq.heappush(events, (at, _READY, seq, h, None))
                    seq += 1
                    continue
                duration = human.sample_solve_ms(rng)
                if at + duration > end:
                    continue  # would cross the window end: the human walks away
                envelope = None
                idx = -1
                for candidate in range(cfg.s):
                    if candidate in active or candidate in claimed or candidate in capped:
                        continue
                    try:
                        envelope = core.issue(identities[candidate], cfg.family, at)
                    except RateLimitedError:
                        capped.add(candidate)
                        continue
                    idx = candidate
                    break
                if envelope is None:
                    continue  # nothing left to work on this window
                claimed.add(idx)
                ok = human.draw_success(rng)
                heapq.heappush(
                    events, (at + duration, _COMPLETE, seq, h, (idx, envelope, ok))
                )
                seq += 1

        core.expire(end)
        s_t = series.active_count(t)
        cost = m_t * cfg.wage_per_human_window + auto_attempts * cfg.auto_cost_per_attempt
        rows.append(WindowRow(t, s_t, m_t, a_t, cost))
        auto_attempts_total += auto_attempts

    tau_h = human.tau_h(window_ms)
    total_s = sum(r.s_t for r in rows)
    total_m = sum(r.m_t for r in rows)
    total_a = sum(r.a_t for r in rows)
    bound = verify_bounds(rows, tau_h)
    metrics = {
        "windows": cfg.windows,
        "tau_h": tau_h,
        "B_T": total_s,
        "m_bar": total_m / cfg.windows,
        "a_bar": total_a / cfg.windows,
        "time_avg_s": total_s / cfg.windows,
        "total_cost": sum(r.cost for r in rows),
        "auto_attempts": auto_attempts_total,
        "bound_violations": bound.per_window_violations,
    }
    report = SimulationReport(cfg.to_dict(), rows, metrics)
    if debug:
        report.debug = {
            "human_solves": dict(human_solves),
            "accepted_total": sum(
                sum(ledger.solved_counts.values()) for ledger in series.windows()
            ),
            "series": series,
        }
    return report


def report_from_dict(data: dict) -> SimulationReport:
    rows = [
        WindowRow(r["window"], r["s_t"], r["m_t"], r["a_t"], r["cost"])
        for r in data["windows"]
    ]
    return SimulationReport(data.get("config", {}), rows, data.get("metrics", {}))
