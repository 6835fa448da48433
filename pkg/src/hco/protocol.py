"""Challenge issuance and verification state machine.

Every challenge is bound to (identity, window, index) by an HMAC-SHA-256
tag over the canonical encoding of the key, the prompt digest, a fresh
nonce, and the issuance timestamp. Verification applies a fixed check
order: unknown -> binding -> deadline -> replay -> answer. Accepted
solutions stay recorded (for replay detection) for a bounded number of
windows; expiry is explicit via `expire`.

All timestamps are integer milliseconds. The core is time-explicit (every
operation takes `now`) and does no synchronization of its own; callers
that interleave operations must serialize them.
"""

from __future__ import annotations

import enum
import hmac
import hashlib
import secrets
from dataclasses import dataclass, field
from typing import Any, Callable

from .encoding import encode_fields
from .errors import (
    InvalidConfigError,
    InvalidIdentityError,
    RateLimitedError,
    UnknownFamilyError,
)
from .families import FamilyRegistry, Prompt

NONCE_BYTES = 16
SECRET_BYTES = 32
MAX_IDENTITY_BYTES = 64


class Verdict(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED_LATE = "rejected_late"
    REJECTED_BAD_BINDING = "rejected_bad_binding"
    REJECTED_WRONG_ANSWER = "rejected_wrong_answer"
    REJECTED_REPLAY = "rejected_replay"
    REJECTED_UNKNOWN_CHALLENGE = "rejected_unknown_challenge"


@dataclass(frozen=True)
class ChallengeKey:
    """Identity-window-index triple a challenge is bound to."""

    identity: bytes
    window: int
    index: int


@dataclass(frozen=True)
class ChallengeEnvelope:
    key: ChallengeKey
    prompt: Prompt
    issued_at: int
    deadline_ms: int
    nonce: bytes
    binding_tag: bytes


@dataclass(frozen=True)
class ChallengeResponse:
    key: ChallengeKey
    answer: Any
    submitted_at: int
    echoed_tag: bytes


@dataclass(frozen=True)
class VerificationOutcome:
    verdict: Verdict
    window: int


@dataclass(frozen=True)
class OracleConfig:
    secret: bytes
    window_ms: int = 60_000
    epoch_ms: int = 0
    issuance_cap: int = 10
    clock_skew_ms: int = 500
    retention_windows: int = 2

    def __post_init__(self) -> None:
        if len(self.secret) != SECRET_BYTES:
            raise InvalidConfigError(f"secret must be {SECRET_BYTES} bytes")
        if self.window_ms <= 0:
            raise InvalidConfigError("window_ms must be positive")
        if self.epoch_ms < 0:
            raise InvalidConfigError("epoch_ms must be >= 0")
        if self.issuance_cap < 1:
            raise InvalidConfigError("issuance_cap must be >= 1")
        if self.clock_skew_ms < 0 or self.retention_windows < 0:
            raise InvalidConfigError("clock_skew_ms and retention_windows must be >= 0")


def secret_from_hex(value: str) -> bytes:
    """Parse a 64-hex-character oracle secret."""
    if len(value) != 2 * SECRET_BYTES:
        raise InvalidConfigError("oracle secret must be 64 hex characters")
    try:
        return bytes.fromhex(value)
    except ValueError:
        raise InvalidConfigError("oracle secret must be 64 hex characters") from None


def window_index(now: int, config: OracleConfig) -> int:
    """Window containing `now`: floor((now - epoch) / window_ms)."""
    if now < config.epoch_ms:
        raise InvalidConfigError("timestamp precedes the epoch")
    return (now - config.epoch_ms) // config.window_ms


def compute_binding_tag(
    secret: bytes, key: ChallengeKey, prompt_digest: bytes, nonce: bytes, issued_at: int
) -> bytes:
    """HMAC-SHA-256 over the canonical encoding of the bound fields."""
    message = encode_fields(
        key.identity, key.window, key.index, prompt_digest, nonce, issued_at
    )
    return hmac.new(secret, message, hashlib.sha256).digest()


def derive_prompt_seed(secret: bytes, key: ChallengeKey, nonce: bytes) -> bytes:
    """Deterministic, secret-keyed seed for prompt generation."""
    message = encode_fields(b"prompt-seed", key.identity, key.window, key.index, nonce)
    return hmac.new(secret, message, hashlib.sha256).digest()


def validate_identity(identity: bytes) -> None:
    if not isinstance(identity, bytes) or not 1 <= len(identity) <= MAX_IDENTITY_BYTES:
        raise InvalidIdentityError("identity must be 1..64 bytes")


@dataclass
class _Entry:
    envelope: ChallengeEnvelope
    solved: bool = False


@dataclass
class OracleCore:
    """Issues challenges and verifies responses against pending state."""

    config: OracleConfig
    families: FamilyRegistry
    nonce_source: Callable[[int], bytes] = secrets.token_bytes
    on_issued: Callable[[ChallengeKey], None] | None = None
    on_accepted: Callable[[ChallengeKey], None] | None = None
    _entries: dict[ChallengeKey, _Entry] = field(default_factory=dict)
    _issue_counts: dict[tuple[bytes, int], int] = field(default_factory=dict)

    def issue(
        self,
        identity: bytes,
        family_id: str,
        now: int,
        nonce: bytes | None = None,
    ) -> ChallengeEnvelope:
        """Issue a fresh challenge bound to (identity, current window, index).

        `nonce` is drawn from `nonce_source` unless supplied (event-log
        replay passes the recorded nonce to rebuild identical state).
        Raises InvalidIdentityError, UnknownFamilyError, RateLimitedError.
        """
        validate_identity(identity)
        descriptor = self.families.descriptor(family_id)
        if not self.families.has_generator(family_id):
            raise UnknownFamilyError(f"{family_id} has no generator")
        window = window_index(now, self.config)
        count = self._issue_counts.get((identity, window), 0)
        if count >= self.config.issuance_cap:
            raise RateLimitedError(
                f"issuance cap {self.config.issuance_cap} reached for window {window}"
            )
        key = ChallengeKey(identity, window, count)
        if nonce is None:
            nonce = self.nonce_source(NONCE_BYTES)
        if len(nonce) != NONCE_BYTES:
            raise InvalidConfigError(f"nonce must be {NONCE_BYTES} bytes")
        seed = derive_prompt_seed(self.config.secret, key, nonce)
        prompt, _answer = self.families.generate(family_id, seed, descriptor.difficulty)
        tag = compute_binding_tag(self.config.secret, key, prompt.digest, nonce, now)
        envelope = ChallengeEnvelope(
            key=key,
            prompt=prompt,
            issued_at=now,
            deadline_ms=descriptor.delta_resp_ms,
            nonce=nonce,
            binding_tag=tag,
        )
        self._entries[key] = _Entry(envelope)
        self._issue_counts[(identity, window)] = count + 1
        if self.on_issued is not None:
            self.on_issued(key)
        return envelope

    def verify(self, response: ChallengeResponse, now: int) -> VerificationOutcome:
        """Apply the fixed check order and record accepted solutions.

        Order: unknown challenge -> binding tag -> deadline -> replay ->
        answer. The deadline is closed at issued_at + deadline_ms for the
        claimed submission time; the server-side receipt time `now` gets
        a clock-skew allowance on top.
        """
        key = response.key
        entry = self._entries.get(key)
        if entry is None:
            return VerificationOutcome(Verdict.REJECTED_UNKNOWN_CHALLENGE, key.window)
        envelope = entry.envelope
        expected = compute_binding_tag(
            self.config.secret, key, envelope.prompt.digest, envelope.nonce, envelope.issued_at
        )
        if not isinstance(response.echoed_tag, bytes) or not hmac.compare_digest(
            expected, response.echoed_tag
        ):
            return VerificationOutcome(Verdict.REJECTED_BAD_BINDING, key.window)
        deadline_at = envelope.issued_at + envelope.deadline_ms
        if response.submitted_at > deadline_at or now > deadline_at + self.config.clock_skew_ms:
            return VerificationOutcome(Verdict.REJECTED_LATE, key.window)
        if entry.solved:
            return VerificationOutcome(Verdict.REJECTED_REPLAY, key.window)
        if not self.families.verify(envelope.prompt.family_id, envelope.prompt.payload, response.answer):
            return VerificationOutcome(Verdict.REJECTED_WRONG_ANSWER, key.window)
        entry.solved = True
        if self.on_accepted is not None:
            self.on_accepted(key)
        return VerificationOutcome(Verdict.ACCEPTED, key.window)

    def expire(self, now: int) -> int:
        """Drop expired pending challenges; prune old replay records.

        Returns the number of expired (never-solved) challenges. Replay
        records (solved entries) and issuance counters are pruned once
        their window falls out of the retention horizon.
        """
        current = window_index(now, self.config)
        horizon = current - self.config.retention_windows
        expired = 0
        for key in list(self._entries):
            entry = self._entries[key]
            if entry.solved:
                if key.window < horizon:
                    del self._entries[key]
            elif entry.envelope.issued_at + entry.envelope.deadline_ms + self.config.clock_skew_ms < now:
                del self._entries[key]
                expired += 1
        for identity, window in list(self._issue_counts):
            if window < horizon:
                del self._issue_counts[(identity, window)]
        return expired

    def pending_count(self) -> int:
        return sum(1 for e in self._entries.values() if not e.solved)

    def replay_record_count(self) -> int:
        return sum(1 for e in self._entries.values() if e.solved)

    def issued_count(self, identity: bytes, window: int) -> int:
        return self._issue_counts.get((identity, window), 0)

    def state_snapshot(self) -> dict:
        """Deterministic digest-friendly view of mutable state (for tests)."""
        return {
            "entries": sorted(
                (
                    key.identity.hex(),
                    key.window,
                    key.index,
                    entry.solved,
                    entry.envelope.binding_tag.hex(),
                )
                for key, entry in self._entries.items()
            ),
            "issue_counts": sorted(
                (identity.hex(), window, count)
                for (identity, window), count in self._issue_counts.items()
            ),
        }
