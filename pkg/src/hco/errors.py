"""Package-wide error types, mapped to HTTP/CLI error codes at the edges."""

from __future__ import annotations


class HcoError(Exception):
    """Base class for package errors."""


class InvalidConfigError(HcoError):
    """A configuration value is structurally invalid."""


class InvalidIdentityError(HcoError):
    """An identity is empty or exceeds 64 bytes."""


class UnknownFamilyError(HcoError):
    """The named challenge family is not registered or has no generator."""


class RateLimitedError(HcoError):
    """Per-identity issuance cap reached for the current window."""


class LogIntegrityError(HcoError):
    """An event log is corrupt or replays to a different state."""
