"""HTTP oracle service with an append-only event log.

Endpoints (JSON over HTTP, CORS-enabled):

    POST /v1/challenge                {"id", "family"} -> wire challenge
    POST /v1/response                 {"id", "window", "index", "tag",
                                       "answer"} -> {"verdict", "window"}
    GET  /v1/identity/<id>/status     -> per-window activity for an identity
    GET  /v1/families                 -> deadline/difficulty per family
    GET  /v1/health                   -> liveness, clock, backend

The server's receive clock is authoritative: any client-supplied
submission time is ignored. Every state transition (issuance,
verification, expiry sweep) is appended to a JSONL event log before the
response is sent, and replaying the log rebuilds identical oracle state
(`replay_events`); on startup with an existing log the service resumes
from the replayed state.
"""

from __future__ import annotations

import functools
import json
import logging
import mimetypes
import os
import secrets
import threading
import time
import urllib.parse
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any, Callable, Iterable

from ._kernels import BACKEND
from .errors import (
    HcoError,
    InvalidConfigError,
    InvalidIdentityError,
    LogIntegrityError,
    RateLimitedError,
    UnknownFamilyError,
)
from .families import FamilyRegistry
from .protocol import (
    ChallengeEnvelope,
    ChallengeKey,
    ChallengeResponse,
    OracleConfig,
    OracleCore,
    window_index,
)
from .registry import ActivitySeries, identity_to_wire, wire_to_identity

logger = logging.getLogger("hco.service")

MAX_BODY_BYTES = 1 << 20

EVENT_ISSUED = "issued"
EVENT_VERIFIED = "verified"
EVENT_EXPIRE = "expire"


def _reject_constant(name: str) -> None:
    raise ValueError(f"non-finite JSON constant {name!r} not allowed")


def parse_strict_json(text: str | bytes) -> Any:
    """JSON parse that rejects NaN/Infinity (they poison logs and digests)."""
    return json.loads(text, parse_constant=_reject_constant)


def _dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), allow_nan=False)


class EventLog:
    """Append-only JSONL log with strictly increasing sequence numbers."""

    def __init__(self, path: str | Path, fsync_every: int = 1) -> None:
        if fsync_every < 1:
            raise InvalidConfigError("fsync_every must be >= 1")
        self.path = Path(path)
        self._fsync_every = fsync_every
        self._since_sync = 0
        self.existing_events = self.read_events(self.path) if self.path.exists() else []
        self._seq = self.existing_events[-1]["seq"] if self.existing_events else 0
        self._fh = open(self.path, "a", encoding="utf-8")
        self._lock = threading.Lock()

    def append(self, event_type: str, record: dict) -> int:
        with self._lock:
            self._seq += 1
            row = {"seq": self._seq, "type": event_type, **record}
            self._fh.write(_dump(row) + "\n")
            self._fh.flush()
            self._since_sync += 1
            if self._since_sync >= self._fsync_every:
                os.fsync(self._fh.fileno())
                self._since_sync = 0
            return self._seq

    def close(self) -> None:
        with self._lock:
            if not self._fh.closed:
                self._fh.flush()
                os.fsync(self._fh.fileno())
                self._fh.close()

    @property
    def last_seq(self) -> int:
        return self._seq

    @staticmethod
    def read_events(path: str | Path) -> list[dict]:
        """Load and structurally validate a log; raises LogIntegrityError."""
        events: list[dict] = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    row = parse_strict_json(line)
                except ValueError as exc:
                    raise LogIntegrityError(f"line {lineno}: invalid JSON: {exc}") from None
                if not isinstance(row, dict) or "seq" not in row or "type" not in row:
                    raise LogIntegrityError(f"line {lineno}: missing seq/type")
                expected = events[-1]["seq"] + 1 if events else 1
                if row["seq"] != expected:
                    raise LogIntegrityError(
                        f"line {lineno}: seq {row['seq']} != expected {expected}"
                    )
                events.append(row)
        return events


@dataclass
class ReplayResult:
    core: OracleCore
    series: ActivitySeries
    events_applied: int
    last_expire_window: int


def replay_events(
    config: OracleConfig,
    families: FamilyRegistry,
    events: Iterable[dict],
) -> ReplayResult:
    """Rebuild oracle state by re-executing every logged transition.

    Issuance re-derives the prompt from the logged nonce and must land on
    the logged digest and tag; verification must reproduce the logged
    verdict. Any divergence (tampered log, changed secret, changed
    family code) raises LogIntegrityError.
    """
    series = ActivitySeries()
    core = OracleCore(
        config,
        families,
        on_issued=series.record_issued,
        on_accepted=series.record_accepted,
    )
    applied = 0
    last_expire_window = -1
    for event in events:
        seq, etype = event.get("seq"), event.get("type")
        try:
            if etype == EVENT_ISSUED:
                envelope = core.issue(
                    wire_to_identity(event["id"]),
                    event["family"],
                    now=event["issued_at"],
                    nonce=bytes.fromhex(event["nonce"]),
                )
                if (
                    envelope.key.window != event["window"]
                    or envelope.key.index != event["index"]
                    or envelope.prompt.digest.hex() != event["prompt_digest"]
                    or envelope.binding_tag.hex() != event["tag"]
                ):
                    raise LogIntegrityError(
                        f"event {seq}: issuance replay diverged from log"
                    )
            elif etype == EVENT_VERIFIED:
                response = ChallengeResponse(
                    key=ChallengeKey(
                        wire_to_identity(event["id"]), event["window"], event["index"]
                    ),
                    answer=event["answer"],
                    submitted_at=event["submitted_at"],
                    echoed_tag=bytes.fromhex(event["tag"]) if event["tag"] else b"",
                )
                outcome = core.verify(response, now=event["now"])
                if outcome.verdict.value != event["verdict"]:
                    raise LogIntegrityError(
                        f"event {seq}: verdict {outcome.verdict.value!r}"
                        f" != logged {event['verdict']!r}"
                    )
            elif etype == EVENT_EXPIRE:
                core.expire(event["now"])
                last_expire_window = window_index(event["now"], config)
            else:
                raise LogIntegrityError(f"event {seq}: unknown type {etype!r}")
        except LogIntegrityError:
            raise
        except (HcoError, KeyError, ValueError, TypeError) as exc:
            raise LogIntegrityError(f"event {seq}: replay failed: {exc}") from exc
        applied += 1
    return ReplayResult(core, series, applied, last_expire_window)


def wire_challenge(envelope: ChallengeEnvelope) -> dict:
    """JSON shape of an issued challenge as sent to clients."""
    return {
        "id": identity_to_wire(envelope.key.identity),
        "family": envelope.prompt.family_id,
        "window": envelope.key.window,
        "index": envelope.key.index,
        "prompt": envelope.prompt.payload,
        "prompt_digest": envelope.prompt.digest.hex(),
        "issued_at": envelope.issued_at,
        "deadline_ms": envelope.deadline_ms,
        "nonce": envelope.nonce.hex(),
        "tag": envelope.binding_tag.hex(),
    }


def _now_ms() -> int:
    return time.time_ns() // 1_000_000


class OracleService:
    """Thread-safe oracle frontend: HTTP routes, event log, expiry sweeps.

    All request handlers are plain methods returning (status, payload) so
    they can be unit-tested without sockets; the HTTP layer is a thin
    adapter around them.
    """

    def __init__(
        self,
        config: OracleConfig,
        families: FamilyRegistry | None = None,
        *,
        log_path: str | Path | None = None,
        static_dir: str | Path | None = None,
        clock: Callable[[], int] | None = None,
        nonce_source: Callable[[int], bytes] | None = None,
    ) -> None:
        self.config = config
        self.families = families or FamilyRegistry.default()
        self.clock = clock or _now_ms
        self._lock = threading.Lock()
        self._last_expire_window = -1
        self.log = EventLog(log_path) if log_path is not None else None
        if self.log is not None and self.log.existing_events:
            result = replay_events(config, self.families, self.log.existing_events)
            self.core, self.series = result.core, result.series
            self._last_expire_window = result.last_expire_window
            logger.info(
                "resumed from %s: %d events replayed", self.log.path, result.events_applied
            )
        else:
            self.series = ActivitySeries()
            self.core = OracleCore(
                config,
                self.families,
                on_issued=self.series.record_issued,
                on_accepted=self.series.record_accepted,
            )
        self.core.nonce_source = nonce_source or secrets.token_bytes
        self.static_dir = Path(static_dir).resolve() if static_dir is not None else None
        self._httpd: ThreadingHTTPServer | None = None
        self._thread: threading.Thread | None = None

    # -- state helpers -------------------------------------------------

    def _maybe_expire(self, now: int) -> None:
        """Run the expiry sweep once per window crossing (caller holds lock)."""
        window = window_index(now, self.config)
        if window != self._last_expire_window:
            removed = self.core.expire(now)
            self._last_expire_window = window
            if self.log is not None:
                self.log.append(EVENT_EXPIRE, {"now": now, "removed": removed})

    # -- request handlers (status, payload) ----------------------------

    def handle_challenge(self, body: Any) -> tuple[int, dict]:
        if not isinstance(body, dict):
            return 400, {"error": "bad_request", "detail": "body must be a JSON object"}
        wire_id, family = body.get("id"), body.get("family")
        if not isinstance(wire_id, str) or not wire_id:
            return 400, {"error": "bad_request", "detail": "missing string field 'id'"}
        if not isinstance(family, str) or not family:
            return 400, {"error": "bad_request", "detail": "missing string field 'family'"}
        try:
            identity = wire_to_identity(wire_id)
        except ValueError:
            return 400, {"error": "bad_request", "detail": "malformed hex identity"}
        now = self.clock()
        with self._lock:
            self._maybe_expire(now)
            try:
                envelope = self.core.issue(identity, family, now)
            except UnknownFamilyError:
                return 404, {"error": "unknown_family", "detail": family}
            except RateLimitedError:
                return 429, {
                    "error": "rate_limited",
                    "detail": f"issuance cap {self.config.issuance_cap} reached",
                }
            except (InvalidIdentityError, InvalidConfigError) as exc:
                return 400, {"error": "bad_request", "detail": str(exc)}
            wire = wire_challenge(envelope)
            if self.log is not None:
                self.log.append(
                    EVENT_ISSUED,
                    {
                        "id": wire["id"],
                        "family": wire["family"],
                        "window": wire["window"],
                        "index": wire["index"],
                        "nonce": wire["nonce"],
                        "issued_at": wire["issued_at"],
                        "deadline_ms": wire["deadline_ms"],
                        "prompt_digest": wire["prompt_digest"],
                        "tag": wire["tag"],
                    },
                )
        return 200, wire

    def handle_response(self, body: Any) -> tuple[int, dict]:
        if not isinstance(body, dict):
            return 400, {"error": "bad_request", "detail": "body must be a JSON object"}
        wire_id = body.get("id")
        window, index = body.get("window"), body.get("index")
        tag = body.get("tag")
        if not isinstance(wire_id, str) or not wire_id:
            return 400, {"error": "bad_request", "detail": "missing string field 'id'"}
        for name, value in (("window", window), ("index", index)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                return 400, {
                    "error": "bad_request",
                    "detail": f"field '{name}' must be a non-negative integer",
                }
        if not isinstance(tag, str):
            return 400, {"error": "bad_request", "detail": "missing string field 'tag'"}
        if "answer" not in body:
            return 400, {"error": "bad_request", "detail": "missing field 'answer'"}
        try:
            identity = wire_to_identity(wire_id)
        except ValueError:
            return 400, {"error": "bad_request", "detail": "malformed hex identity"}
        try:
            echoed_tag = bytes.fromhex(tag)
        except ValueError:
            echoed_tag = b""  # routed to the bad-binding verdict, not a 400
        now = self.clock()
        response = ChallengeResponse(
            key=ChallengeKey(identity, window, index),
            answer=body["answer"],
            submitted_at=now,  # receipt time is authoritative
            echoed_tag=echoed_tag,
        )
        with self._lock:
            self._maybe_expire(now)
            outcome = self.core.verify(response, now)
            if self.log is not None:
                self.log.append(
                    EVENT_VERIFIED,
                    {
                        "id": wire_id,
                        "window": window,
                        "index": index,
                        "tag": echoed_tag.hex(),
                        "answer": body["answer"],
                        "submitted_at": now,
                        "now": now,
                        "verdict": outcome.verdict.value,
                    },
                )
        return 200, {"verdict": outcome.verdict.value, "window": outcome.window}

    def handle_status(self, wire_id: str) -> tuple[int, dict]:
        try:
            identity = wire_to_identity(wire_id)
        except ValueError:
            return 400, {"error": "bad_request", "detail": "malformed hex identity"}
        now = self.clock()
        window = window_index(now, self.config)
        with self._lock:
            solved = self.series.solved_count(identity, window)
            issued = self.core.issued_count(identity, window)
        return 200, {
            "id": identity_to_wire(identity),
            "window": window,
            "active": solved >= 1,
            "solved_count": solved,
            "issued_count": issued,
            "issuance_cap": self.config.issuance_cap,
        }

    def handle_families(self) -> tuple[int, dict]:
        rows = []
        for family_id in self.families.family_ids():
            descriptor = self.families.descriptor(family_id)
            rows.append(
                {
                    "family": family_id,
                    "deadline_ms": descriptor.delta_resp_ms,
                    "difficulty": descriptor.difficulty,
                    "has_generator": self.families.has_generator(family_id),
                }
            )
        return 200, {"families": rows}

    def handle_health(self) -> tuple[int, dict]:
        now = self.clock()
        return 200, {
            "status": "ok",
            "backend": BACKEND,
            "now": now,
            "window": window_index(now, self.config),
            "window_ms": self.config.window_ms,
            "epoch_ms": self.config.epoch_ms,
            "log_seq": self.log.last_seq if self.log is not None else None,
        }

    # -- lifecycle ------------------------------------------------------

    def start(self, host: str = "127.0.0.1", port: int = 0) -> int:
        """Start the HTTP server on a daemon thread; returns the bound port."""
        if self._httpd is not None:
            raise RuntimeError("service already started")
        handler = functools.partial(_Handler, service=self)
        self._httpd = ThreadingHTTPServer((host, port), handler)
        self._httpd.daemon_threads = True
        self._thread = threading.Thread(
            target=self._httpd.serve_forever, name="hco-oracle-http", daemon=True
        )
        self._thread.start()
        bound = self._httpd.server_address[1]
        logger.info("oracle service listening on %s:%d", host, bound)
        return bound

    @property
    def port(self) -> int:
        if self._httpd is None:
            raise RuntimeError("service not started")
        return self._httpd.server_address[1]

    def stop(self) -> None:
        if self._httpd is not None:
            self._httpd.shutdown()
            self._httpd.server_close()
            self._httpd = None
        if self._thread is not None:
            self._thread.join(timeout=5)
            self._thread = None
        if self.log is not None:
            self.log.close()

    def __enter__(self) -> "OracleService":
        return self

    def __exit__(self, *_exc: object) -> None:
        self.stop()


class _Handler(BaseHTTPRequestHandler):
    server_version = "hco-oracle"
    protocol_version = "HTTP/1.1"

    def __init__(self, *args: Any, service: OracleService, **kwargs: Any) -> None:
        self.service = service
        super().__init__(*args, **kwargs)

    def log_message(self, fmt: str, *args: Any) -> None:
        logger.debug("%s %s", self.address_string(), fmt % args)

    def _cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _send_json(self, status: int, payload: dict) -> None:
        body = _dump(payload).encode("utf-8")
        self.send_response(status)
        self._cors()
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> Any:
        length = int(self.headers.get("Content-Length") or 0)
        if length > MAX_BODY_BYTES:
            raise _BodyTooLarge()
        raw = self.rfile.read(length)
        return parse_strict_json(raw.decode("utf-8"))

    def do_OPTIONS(self) -> None:  # noqa: N802 (stdlib naming)
        self.send_response(204)
        self._cors()
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_POST(self) -> None:  # noqa: N802
        path = urllib.parse.urlsplit(self.path).path
        try:
            body = self._read_body()
        except _BodyTooLarge:
            self._send_json(413, {"error": "payload_too_large"})
            return
        except (ValueError, UnicodeDecodeError) as exc:
            self._send_json(400, {"error": "bad_request", "detail": f"invalid JSON: {exc}"})
            return
        if path == "/v1/challenge":
            status, payload = self.service.handle_challenge(body)
        elif path == "/v1/response":
            status, payload = self.service.handle_response(body)
        else:
            status, payload = 404, {"error": "not_found"}
        self._send_json(status, payload)

    def do_GET(self) -> None:  # noqa: N802
        path = urllib.parse.urlsplit(self.path).path
        if path == "/v1/health":
            status, payload = self.service.handle_health()
        elif path == "/v1/families":
            status, payload = self.service.handle_families()
        elif path.startswith("/v1/identity/") and path.endswith("/status"):
            wire_id = urllib.parse.unquote(path[len("/v1/identity/") : -len("/status")])
            status, payload = self.service.handle_status(wire_id)
        elif path.startswith("/v1/"):
            status, payload = 404, {"error": "not_found"}
        else:
            self._serve_static(path)
            return
        self._send_json(status, payload)

    def _serve_static(self, path: str) -> None:
        root = self.service.static_dir
        if root is None:
            self._send_json(404, {"error": "not_found"})
            return
        relative = path.lstrip("/") or "index.html"
        target = (root / relative).resolve()
        if root not in target.parents and target != root:
            self._send_json(404, {"error": "not_found"})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(404, {"error": "not_found"})
            return
        content_type = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        data = target.read_bytes()
        self.send_response(200)
        self._cors()
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


class _BodyTooLarge(Exception):
    pass


__all__ = [
    "EVENT_EXPIRE",
    "EVENT_ISSUED",
    "EVENT_VERIFIED",
    "MAX_BODY_BYTES",
    "EventLog",
    "OracleService",
    "ReplayResult",
    "parse_strict_json",
    "replay_events",
    "wire_challenge",
]
