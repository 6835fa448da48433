"""Shared fixtures: deterministic oracles with controllable clocks."""

from __future__ import annotations

import hashlib
import itertools

import pytest

from hco.families import FamilyRegistry
from hco.protocol import OracleConfig, OracleCore

TEST_SECRET = bytes(range(32))


def deterministic_nonce_source(label: bytes = b"nonce"):
    """Counter-based nonce stream; same label -> same nonce sequence."""
    counter = itertools.count()

    def source(n: int) -> bytes:
        return hashlib.sha256(label + next(counter).to_bytes(8, "big")).digest()[:n]

    return source


@pytest.fixture(scope="session")
def registry() -> FamilyRegistry:
    return FamilyRegistry.default()


@pytest.fixture
def config() -> OracleConfig:
    return OracleConfig(secret=TEST_SECRET, window_ms=60_000)


@pytest.fixture
def core(config, registry) -> OracleCore:
    return OracleCore(config, registry, nonce_source=deterministic_nonce_source())


def seed_for(index: int, label: bytes = b"test-seed") -> bytes:
    return hashlib.sha256(label + index.to_bytes(8, "big")).digest()
