"""Cost sweeps, resource-model comparison, and benchmark-table reproduction.

`cost_sweep` finds, for each identity count s, the minimal constant
number of humans that sustains s active identities per window, by binary
search over full simulation runs. The per-identity marginal cost of the
challenge-oracle mechanism stays constant (~wage/tau_h), in contrast to
stake- or computation-based mechanisms whose marginal cost vanishes.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from ..errors import InvalidConfigError
from ..families import FamilyRegistry
from ..protocol import ChallengeResponse, OracleConfig, OracleCore, Verdict
from .agents import (
    AUTO_LATENCY_MEDIAN_MS,
    HUMAN_SOLVE_MEDIAN_MS,
    AutomatedSolverModel,
    HumanAgentModel,
)
from .config import AdversaryConfig
from .runner import run_simulation


def sweep_base_config(
    *,
    seed: int = 0,
    windows: int = 4,
    window_ms: int = 60_000,
    solve_time_ms: int = 20_000,
    eps_hum: float = 0.0,
    family: str = "reasoning",
    wage: float = 1.0,
) -> AdversaryConfig:
    """Deterministic greedy-outsourcing run used for cost search.

    Defaults give tau_h = floor(60000/20000) = 3 with no stochasticity, so
    the per-m achieved average is exact and the binary search is crisp.
    """
    return AdversaryConfig(
        s=1,
        m_schedule={"kind": "constant", "m": 1},
        strategy="outsourcing_greedy",
        wage_per_human_window=wage,
        seed=seed,
        windows=windows,
        family=family,
        window_ms=window_ms,
        issuance_cap=10,
        human={
            "solve_time_median_ms": solve_time_ms,
            "solve_time_sigma": 0.0,
            "eps_hum": eps_hum,
        },
    )


def achieved_average(base: AdversaryConfig, s: int, m: int, families: FamilyRegistry) -> float:
    cfg = replace(base, s=s, m_schedule={"kind": "constant", "m": m})
    return run_simulation(cfg, families).metrics["time_avg_s"]


def minimal_humans(
    s: int,
    base: AdversaryConfig | None = None,
    families: FamilyRegistry | None = None,
    sustain_fraction: float = 1.0,
) -> int:
    """Minimal constant m whose achieved time-averaged s_t reaches the
    sustain target (1 - eps_hum) * s * sustain_fraction."""
    base = base or sweep_base_config()
    families = families or FamilyRegistry.default()
    eps_hum = base.human_model(families).eps_hum
    target = (1 - eps_hum) * s * sustain_fraction
    if target <= 0:
        return 0
    tau_h = base.human_model(families).tau_h(base.window_ms)

    def sustains(m: int) -> bool:
        return achieved_average(base, s, m, families) >= target - 1e-9

    hi = max(1, math.ceil(s / tau_h) + 1)
    while not sustains(hi):
        if hi > 4 * s + 8:
            raise InvalidConfigError(f"cannot sustain s={s} at any plausible m")
        hi *= 2
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sustains(mid):
            hi = mid
        else:
            lo = mid
    return hi


def fit_line(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Least-squares (slope, intercept)."""
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return slope, mean_y - slope * mean_x


def cost_sweep(
    s_values: Sequence[int],
    base: AdversaryConfig | None = None,
    families: FamilyRegistry | None = None,
    sustain_fraction: float = 1.0,
) -> dict:
    """Minimal-m curve over s plus a linear fit of m against s."""
    base = base or sweep_base_config()
    families = families or FamilyRegistry.default()
    points = []
    for s in s_values:
        m_min = minimal_humans(s, base, families, sustain_fraction)
        points.append({"s": s, "m_min": m_min, "cost": m_min * base.wage_per_human_window})
    slope = intercept = 0.0
    if len(points) >= 2:
        slope, intercept = fit_line(
            [p["s"] for p in points], [float(p["m_min"]) for p in points]
        )
    return {
        "points": points,
        "slope": slope,
        "intercept": intercept,
        "tau_h": base.human_model(families).tau_h(base.window_ms),
        "wage_per_human_window": base.wage_per_human_window,
    }


@dataclass(frozen=True)
class ResourceModel:
    """Sybil-resistance mechanism cost model."""

    mechanism: str
    resource: str
    reusable: bool
    cost_fn: Callable[[int], float]


def proof_of_work_model(hardware_cost: float = 1000.0) -> ResourceModel:
    return ResourceModel(
        "proof-of-work", "computation", True, lambda s: 0.0 if s == 0 else hardware_cost
    )


def proof_of_stake_model(stake: float = 1000.0) -> ResourceModel:
    return ResourceModel(
        "proof-of-stake", "capital", True, lambda s: 0.0 if s == 0 else stake
    )


def challenge_oracle_model(
    sweep: dict, wage: float = 1.0
) -> ResourceModel:
    costs = {p["s"]: p["cost"] for p in sweep["points"]}
    tau_h = sweep["tau_h"]

    def cost_fn(s: int) -> float:
        if s in costs:
            return costs[s]
        return math.ceil(s / tau_h) * wage  # extrapolate off the sampled grid

    return ResourceModel("challenge-oracle", "human effort", False, cost_fn)


def _classify_scaling(first_cost: float, marginals: list[float]) -> str:
    if not marginals:
        return "constant"
    if max(abs(m) for m in marginals) <= 0.01 * max(first_cost, 1e-12):
        return "constant"
    mean = sum(marginals) / len(marginals)
    if mean > 0 and all(abs(m - mean) <= 0.05 * mean for m in marginals):
        return "linear"
    return "mixed"


def compare_resource_models(
    s_values: Sequence[int],
    base: AdversaryConfig | None = None,
    families: FamilyRegistry | None = None,
) -> dict:
    """Tabulate per-s cost, marginal cost, reuse flag and scaling class
    for proof-of-work, proof-of-stake and the challenge oracle."""
    base = base or sweep_base_config()
    families = families or FamilyRegistry.default()
    s_values = sorted(set(int(s) for s in s_values))
    sweep = cost_sweep(s_values, base, families)
    models = [
        proof_of_work_model(),
        proof_of_stake_model(),
        challenge_oracle_model(sweep, base.wage_per_human_window),
    ]
    rows = []
    for model in models:
        costs = {s: model.cost_fn(s) for s in s_values}
        marginals = []
        for prev, cur in zip(s_values, s_values[1:]):
            marginals.append((costs[cur] - costs[prev]) / (cur - prev))
        first = model.cost_fn(1)
        rows.append(
            {
                "mechanism": model.mechanism,
                "resource": model.resource,
                "reusable": model.reusable,
                "first_identity_cost": first,
                "costs": costs,
                "marginals": marginals,
                "cost_scaling": _classify_scaling(first, marginals),
            }
        )
    return {"s_values": s_values, "rows": rows, "sweep": sweep}


# --- per-family outcome table -----------------------------------------

TABLE_FAMILIES = ("perceptual", "reasoning", "biometric", "attention")


def family_outcome_table(
    trials: int = 10_000,
    seed: int = 0,
    families: FamilyRegistry | None = None,
) -> dict:
    """Monte-Carlo success rates for human and automated solvers per family.

    Families with a generator run every trial through real protocol
    issuance/verification; the descriptor-only biometric row is sampled
    from its model alone. Binomial 3-sigma half-widths are attached.
    """
    if trials < 1:
        raise InvalidConfigError("trials must be >= 1")
    families = families or FamilyRegistry.default()
    rng = random.Random(seed)
    rows = []
    for family in TABLE_FAMILIES:
        descriptor = families.descriptor(family)
        human = HumanAgentModel(
            solve_time_median_ms=HUMAN_SOLVE_MEDIAN_MS[family],
            eps_hum=descriptor.eps_hum,
        )
        auto = AutomatedSolverModel(
            eps_auto=descriptor.eps_auto,
            latency_median_ms=AUTO_LATENCY_MEDIAN_MS[family],
        )
        row = {"family": family, "trials": trials}
        for kind, model in (("human", human), ("auto", auto)):
            if families.has_generator(family):
                successes, times = _protocol_trials(family, kind, model, descriptor.delta_resp_ms, trials, rng, families)
            else:
                successes, times = _model_trials(kind, model, descriptor.delta_resp_ms, trials, rng)
            rate = successes / trials
            row[f"{kind}_success"] = rate
            row[f"{kind}_mean_s"] = (sum(times) / len(times) / 1000) if times else None
            row[f"{kind}_ci3"] = 3 * math.sqrt(max(rate * (1 - rate), 1e-12) / trials)
        rows.append(row)
    return {"trials": trials, "seed": seed, "rows": rows}


def _protocol_trials(family, kind, model, delta_resp_ms, trials, rng, families):
    secret = hashlib.sha256(f"table-{family}-{kind}".encode()).digest()
    core = OracleCore(
        OracleConfig(secret=secret, issuance_cap=trials + 1),
        families,
        nonce_source=rng.randbytes,
    )
    identity = f"probe-{family}-{kind}".encode()
    successes = 0
    times = []
    for _ in range(trials):
        envelope = core.issue(identity, family, now=0)
        if kind == "human":
            elapsed = model.sample_solve_ms(rng)
            ok = model.draw_success(rng)
        else:
            elapsed = model.sample_latency_ms(rng)
            ok = model.draw_success(rng)
        payload = envelope.prompt.payload
        answer = (
            families.reference_answer(family, payload)
            if ok
            else families.wrong_answer(family, payload)
        )
        outcome = core.verify(
            ChallengeResponse(envelope.key, answer, elapsed, envelope.binding_tag),
            now=elapsed,
        )
        if outcome.verdict is Verdict.ACCEPTED:
            successes += 1
            times.append(elapsed)
    return successes, times


def _model_trials(kind, model, delta_resp_ms, trials, rng):
    successes = 0
    times = []
    for _ in range(trials):
        if kind == "human":
            elapsed = model.sample_solve_ms(rng)
            ok = model.draw_success(rng) and elapsed <= delta_resp_ms
        else:
            elapsed = model.sample_latency_ms(rng)
            ok = model.draw_success(rng) and elapsed <= delta_resp_ms
        if ok:
            successes += 1
            times.append(elapsed)
    return successes, times
