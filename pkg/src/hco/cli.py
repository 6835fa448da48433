"""Command-line interface for the oracle service and adversary simulator.

Subcommands:

    serve            run the HTTP oracle service (foreground)
    simulate         run one adversary simulation; write JSON/CSV reports
    verify-bounds    re-check the cost bounds of a saved report
    sweep            minimal-humans cost sweep over identity counts
    compare-models   cost scaling of stake/hardware vs. oracle mechanisms
    family-table     Monte-Carlo success/latency table per challenge family
    demo-challenge   generate one prompt + reference answer locally

Exit codes: 0 success, 1 bound/verification failure, 2 usage or config error.
The oracle secret comes from --secret-hex or the HCO_ORACLE_SECRET
environment variable (64 hex chars); `serve` generates an ephemeral one
if neither is set.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
import threading
from pathlib import Path
from typing import Any, Sequence

from .errors import HcoError, InvalidConfigError
from .families import FamilyRegistry
from .protocol import OracleConfig, secret_from_hex
from .service import OracleService, parse_strict_json
from .simulator import (
    AdversaryConfig,
    SimulationReport,
    compare_resource_models,
    cost_sweep,
    family_outcome_table,
    report_from_dict,
    run_simulation,
    sweep_base_config,
    verify_bounds,
)

SECRET_ENV = "HCO_ORACLE_SECRET"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def parse_int_spec(spec: str) -> list[int]:
    """Parse "10..200..10" (inclusive range), "1,10,100", or "50"."""
    spec = spec.strip()
    try:
        if ".." in spec:
            parts = spec.split("..")
            if len(parts) == 2:
                lo, hi, step = int(parts[0]), int(parts[1]), 1
            elif len(parts) == 3:
                lo, hi, step = int(parts[0]), int(parts[1]), int(parts[2])
            else:
                raise ValueError(spec)
            if step < 1 or hi < lo:
                raise ValueError(spec)
            return list(range(lo, hi + 1, step))
        if "," in spec:
            return [int(part) for part in spec.split(",")]
        return [int(spec)]
    except ValueError:
        raise InvalidConfigError(
            f"bad integer spec {spec!r}: use N, N,M,..., or LO..HI[..STEP]"
        ) from None


def _resolve_secret(args: argparse.Namespace, *, allow_ephemeral: bool) -> bytes:
    value = getattr(args, "secret_hex", None) or os.environ.get(SECRET_ENV)
    if value:
        return secret_from_hex(value)
    if allow_ephemeral:
        secret = secrets.token_bytes(32)
        print(
            f"warning: no --secret-hex or ${SECRET_ENV}; using ephemeral secret "
            f"{secret.hex()}",
            file=sys.stderr,
        )
        return secret
    raise InvalidConfigError(f"set --secret-hex or ${SECRET_ENV} (64 hex chars)")


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"), encoding="utf-8")
    else:
        print(text)


def _json_arg(value: str) -> Any:
    try:
        return parse_strict_json(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON: {exc}") from None


# --- subcommand implementations --------------------------------------------


def _cmd_serve(args: argparse.Namespace) -> int:
    secret = _resolve_secret(args, allow_ephemeral=True)
    config = OracleConfig(
        secret=secret,
        window_ms=args.window_ms,
        epoch_ms=args.epoch_ms,
        issuance_cap=args.issuance_cap,
        clock_skew_ms=args.clock_skew_ms,
        retention_windows=args.retention_windows,
    )
    service = OracleService(
        config,
        FamilyRegistry.default(),
        log_path=args.log,
        static_dir=args.static_dir,
    )
    port = service.start(host=args.host, port=args.port)
    print(f"oracle service on http://{args.host}:{port} (Ctrl-C to stop)", flush=True)
    try:
        threading.Event().wait()
    except KeyboardInterrupt:
        pass
    finally:
        service.stop()
    return EXIT_OK


def _load_adversary_config(args: argparse.Namespace) -> AdversaryConfig:
    if args.config:
        data = parse_strict_json(Path(args.config).read_text(encoding="utf-8"))
    else:
        if args.strategy is None or args.s is None:
            raise InvalidConfigError("--strategy and --s are required without --config")
        data = {
            "s": args.s,
            "strategy": args.strategy,
            "m_schedule": args.schedule
            if args.schedule is not None
            else {"kind": "constant", "m": args.m},
        }
    overrides = {
        "windows": args.windows,
        "seed": args.seed,
        "family": args.family,
        "relay_extra_latency_ms": args.relay_extra_ms,
        "wage_per_human_window": args.wage,
        "auto_cost_per_attempt": args.auto_cost,
        "human": args.human,
        "auto": args.auto,
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    return AdversaryConfig.from_dict(data)


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load_adversary_config(args)
    report = run_simulation(cfg)
    if args.out:
        _write_or_print(report.to_json(), args.out)
    if args.csv:
        _write_or_print(report.to_csv(), args.csv)
    metrics = report.metrics
    print(
        f"strategy={cfg.strategy} s={cfg.s} windows={metrics['windows']} "
        f"tau_h={metrics['tau_h']} B_T={metrics['B_T']} "
        f"time_avg_s={metrics['time_avg_s']:.3f} m_bar={metrics['m_bar']:.3f} "
        f"a_bar={metrics['a_bar']:.3f} total_cost={metrics['total_cost']:.3f}"
    )
    violations = metrics["bound_violations"]
    if violations:
        print(f"BOUND VIOLATIONS: {len(violations)}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print("cost bounds hold for every window, the time average, and the burst total")
    return EXIT_OK


def _cmd_verify_bounds(args: argparse.Namespace) -> int:
    data = parse_strict_json(Path(args.report).read_text(encoding="utf-8"))
    report = report_from_dict(data)
    cfg = AdversaryConfig.from_dict(report.config)
    families = FamilyRegistry.default()
    tau_h = cfg.human_model(families).tau_h(cfg.window_ms)
    stored_tau = report.metrics.get("tau_h")
    if stored_tau is not None and stored_tau != tau_h:
        print(
            f"metrics tau_h={stored_tau} does not match config-derived tau_h={tau_h}",
            file=sys.stderr,
        )
        return EXIT_CHECK_FAILED
    recomputed = {
        "B_T": sum(r.s_t for r in report.rows),
        "time_avg_s": sum(r.s_t for r in report.rows) / len(report.rows),
        "windows": len(report.rows),
    }
    for key, value in recomputed.items():
        stored = report.metrics.get(key)
        if stored is not None and stored != value:
            print(f"metrics {key}={stored} does not match rows ({value})", file=sys.stderr)
            return EXIT_CHECK_FAILED
    bound = verify_bounds(report.rows, tau_h)
    print(bound.summary())
    return EXIT_OK if bound.ok else EXIT_CHECK_FAILED


def _cmd_sweep(args: argparse.Namespace) -> int:
    s_values = parse_int_spec(args.s)
    base = sweep_base_config(
        seed=args.seed,
        windows=args.windows,
        solve_time_ms=args.solve_ms,
    )
    result = cost_sweep(s_values, base, sustain_fraction=args.sustain_fraction)
    if args.out:
        _write_or_print(json.dumps(result, indent=2, sort_keys=True), args.out)
    print(f"{'s':>6} {'m_min':>6} {'cost':>10}")
    for point in result["points"]:
        print(f"{point['s']:>6} {point['m_min']:>6} {point['cost']:>10.2f}")
    print(
        f"slope={result['slope']:.5f} intercept={result['intercept']:.3f} "
        f"tau_h={result['tau_h']} (ideal slope 1/tau_h = {1 / result['tau_h']:.5f})"
    )
    return EXIT_OK


def _cmd_compare_models(args: argparse.Namespace) -> int:
    s_values = parse_int_spec(args.s)
    base = sweep_base_config(seed=args.seed, windows=args.windows, solve_time_ms=args.solve_ms)
    result = compare_resource_models(s_values, base)
    if args.out:
        _write_or_print(json.dumps(result, indent=2, sort_keys=True), args.out)
    shown = result["s_values"][:4]
    print(f"{'mechanism':<18} {'resource':<22} {'reusable':<9} {'scaling':<9} cost(s)")
    for row in result["rows"]:
        costs = ", ".join(f"{row['costs'][s]:.1f}" for s in shown)
        print(
            f"{row['mechanism']:<18} {row['resource']:<22} "
            f"{str(row['reusable']).lower():<9} {row['cost_scaling']:<9} {costs}, ..."
        )
    return EXIT_OK


def _cmd_family_table(args: argparse.Namespace) -> int:
    result = family_outcome_table(trials=args.trials, seed=args.seed)
    if args.out:
        _write_or_print(json.dumps(result, indent=2, sort_keys=True), args.out)
    print(f"{'family':<12} {'human ok':>9} {'human s':>8} {'auto ok':>9} {'auto s':>8}")
    for row in result["rows"]:
        hum_s = f"{row['human_mean_s']:.1f}" if row["human_mean_s"] is not None else "-"
        auto_s = f"{row['auto_mean_s']:.1f}" if row["auto_mean_s"] is not None else "-"
        print(
            f"{row['family']:<12} {row['human_success'] * 100:>8.1f}% {hum_s:>8} "
            f"{row['auto_success'] * 100:>8.1f}% {auto_s:>8}"
        )
    return EXIT_OK


def _cmd_demo_challenge(args: argparse.Namespace) -> int:
    families = FamilyRegistry.default()
    seed = bytes.fromhex(args.seed_hex) if args.seed_hex else secrets.token_bytes(32)
    if len(seed) != 32:
        raise InvalidConfigError("--seed-hex must be 64 hex characters")
    prompt, answer = families.generate(args.family, seed)
    print(
        json.dumps(
            {
                "family": prompt.family_id,
                "prompt": prompt.payload,
                "prompt_digest": prompt.digest.hex(),
                "reference_answer": answer,
                "seed": seed.hex(),
            },
            indent=2,
            sort_keys=True,
        )
    )
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hco",
        description="Identity-bound challenge oracle: service, simulator, cost analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP oracle service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--window-ms", type=int, default=60_000)
    p.add_argument("--epoch-ms", type=int, default=0)
    p.add_argument("--issuance-cap", type=int, default=10)
    p.add_argument("--clock-skew-ms", type=int, default=500)
    p.add_argument("--retention-windows", type=int, default=2)
    p.add_argument("--secret-hex", help=f"64 hex chars; falls back to ${SECRET_ENV}")
    p.add_argument("--log", help="append-only event log path (enables restart resume)")
    p.add_argument("--static-dir", help="serve static files (web client) from this dir")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("simulate", help="run one adversary simulation")
    p.add_argument("--config", help="JSON adversary config file")
    p.add_argument("--strategy")
    p.add_argument("--s", type=int, help="identity count")
    p.add_argument("--m", type=int, default=0, help="constant per-window human count")
    p.add_argument("--schedule", type=_json_arg, help='JSON schedule, e.g. {"kind":...}')
    p.add_argument("--windows", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--family")
    p.add_argument("--relay-extra-ms", type=int, dest="relay_extra_ms")
    p.add_argument("--wage", type=float)
    p.add_argument("--auto-cost", type=float, dest="auto_cost")
    p.add_argument("--human", type=_json_arg, help="JSON human model overrides")
    p.add_argument("--auto", type=_json_arg, help="JSON automation model overrides")
    p.add_argument("--out", help="write full JSON report here")
    p.add_argument("--csv", help="write per-window CSV here")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify-bounds", help="re-check cost bounds of a saved report")
    p.add_argument("report", help="JSON report from `hco simulate --out`")
    p.set_defaults(func=_cmd_verify_bounds)

    p = sub.add_parser("sweep", help="minimal-humans cost sweep over identity counts")
    p.add_argument("--s", default="10..200..10", help="identity counts (LO..HI[..STEP])")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--windows", type=int, default=4)
    p.add_argument("--solve-ms", type=int, default=20_000, dest="solve_ms")
    p.add_argument("--sustain-fraction", type=float, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("compare-models", help="cost scaling across mechanisms")
    p.add_argument("--s", default="100..1000..100")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--windows", type=int, default=4)
    p.add_argument("--solve-ms", type=int, default=20_000, dest="solve_ms")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_compare_models)

    p = sub.add_parser("family-table", help="success/latency table per family")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_family_table)

    p = sub.add_parser("demo-challenge", help="generate one prompt locally")
    p.add_argument("--family", default="reasoning")
    p.add_argument("--seed-hex", dest="seed_hex")
    p.set_defaults(func=_cmd_demo_challenge)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HcoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
