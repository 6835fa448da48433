"""Challenge family registry: descriptors, generation, verification.

A family couples a descriptor (deadline, modeled success probabilities,
difficulty) with an optional generator module. Generation is
deterministic in the seed; verification is pure and stateless.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from types import ModuleType
from typing import Any, Callable

from ..encoding import payload_digest
from ..errors import InvalidConfigError, UnknownFamilyError
from . import attention, perceptual, reasoning


@dataclass(frozen=True)
class FamilyDescriptor:
    """Operating parameters for one challenge family."""

    family_id: str
    delta_resp_ms: int
    eps_hum: float
    eps_auto: float
    difficulty: int = 1

    def __post_init__(self) -> None:
        if not self.family_id:
            raise InvalidConfigError("family_id must be non-empty")
        if self.delta_resp_ms <= 0:
            raise InvalidConfigError("delta_resp_ms must be positive")
        if not 0 <= self.eps_auto < 1 - self.eps_hum <= 1:
            raise InvalidConfigError(
                f"need 0 <= eps_auto < 1 - eps_hum <= 1, got "
                f"eps_auto={self.eps_auto}, eps_hum={self.eps_hum}"
            )
        if self.difficulty < 1:
            raise InvalidConfigError("difficulty must be >= 1")


@dataclass(frozen=True)
class Prompt:
    """A generated challenge prompt plus its canonical-JSON digest."""

    family_id: str
    payload: dict
    digest: bytes


# Descriptor defaults. delta_resp_ms values keep the modeled solve-time
# tail mass negligible for the agent models used by the simulator.
DEFAULT_DESCRIPTORS = (
    FamilyDescriptor("perceptual", delta_resp_ms=20_000, eps_hum=0.08, eps_auto=0.12),
    FamilyDescriptor("reasoning", delta_resp_ms=30_000, eps_hum=0.15, eps_auto=0.18),
    FamilyDescriptor("attention", delta_resp_ms=40_000, eps_hum=0.05, eps_auto=0.0),
    # Biometric-light is descriptor-only: modeled in simulations, never generated.
    FamilyDescriptor("biometric", delta_resp_ms=30_000, eps_hum=0.0, eps_auto=0.0),
)

_GENERATOR_MODULES: dict[str, ModuleType] = {
    perceptual.FAMILY_ID: perceptual,
    reasoning.FAMILY_ID: reasoning,
    attention.FAMILY_ID: attention,
}


class FamilyRegistry:
    """Maps family ids to descriptors and generator modules."""

    def __init__(self) -> None:
        self._descriptors: dict[str, FamilyDescriptor] = {}
        self._generators: dict[str, ModuleType] = {}

    @classmethod
    def default(cls, overrides: dict[str, dict] | None = None) -> "FamilyRegistry":
        """Registry with the four standard families.

        `overrides` maps family_id to descriptor field overrides, e.g.
        ``{"perceptual": {"delta_resp_ms": 500}}``.
        """
        registry = cls()
        for descriptor in DEFAULT_DESCRIPTORS:
            if overrides and descriptor.family_id in overrides:
                fields = {**descriptor.__dict__, **overrides[descriptor.family_id]}
                descriptor = FamilyDescriptor(**fields)
            registry.register(descriptor, _GENERATOR_MODULES.get(descriptor.family_id))
        return registry

    def register(self, descriptor: FamilyDescriptor, generator: ModuleType | None = None) -> None:
        self._descriptors[descriptor.family_id] = descriptor
        if generator is not None:
            self._generators[descriptor.family_id] = generator

    def family_ids(self) -> list[str]:
        return sorted(self._descriptors)

    def generator_family_ids(self) -> list[str]:
        return sorted(self._generators)

    def descriptor(self, family_id: str) -> FamilyDescriptor:
        try:
            return self._descriptors[family_id]
        except KeyError:
            raise UnknownFamilyError(family_id) from None

    def has_generator(self, family_id: str) -> bool:
        return family_id in self._generators

    def _generator(self, family_id: str) -> ModuleType:
        self.descriptor(family_id)
        try:
            return self._generators[family_id]
        except KeyError:
            raise UnknownFamilyError(f"{family_id} has no generator") from None

    def generate(
        self, family_id: str, seed: bytes, difficulty: int | None = None
    ) -> tuple[Prompt, Any]:
        """Deterministically build (prompt, hidden answer spec) from the seed."""
        generator = self._generator(family_id)
        if difficulty is None:
            difficulty = self.descriptor(family_id).difficulty
        payload, answer = generator.build(seed, difficulty)
        return Prompt(family_id, payload, payload_digest(payload)), answer

    def verify(self, family_id: str, payload: dict, answer: Any) -> bool:
        return bool(self._generator(family_id).verify(payload, answer))

    def reference_answer(self, family_id: str, payload: dict) -> Any:
        return self._generator(family_id).reference_answer(payload)

    def wrong_answer(self, family_id: str, payload: dict) -> Any:
        return self._generator(family_id).wrong_answer(payload)

    def admissibility_selfcheck(
        self,
        family_id: str,
        trials: int = 100,
        seed: bytes = b"admissibility-selfcheck",
        build: Callable[[bytes, int], tuple[dict, Any]] | None = None,
    ) -> dict:
        """Bulk-check freshness, determinism, completeness and uniqueness.

        `build` may replace the family's generator (fault injection in
        tests). Returns a report dict; `ok` is True iff no check failed.
        """
        if trials < 1:
            raise InvalidConfigError("trials must be >= 1")
        generator = self._generator(family_id)
        difficulty = self.descriptor(family_id).difficulty
        build = build or generator.build
        digests: set[bytes] = set()
        failures: list[str] = []
        deterministic = True
        complete = True
        unique = True
        for i in range(trials):
            trial_seed = hashlib.sha256(seed + i.to_bytes(8, "big")).digest()
            payload, answer = build(trial_seed, difficulty)
            digests.add(payload_digest(payload))
            if not generator.verify(payload, answer):
                complete = False
                failures.append(f"trial {i}: reference answer rejected")
            if generator.verify(payload, answer) != generator.verify(payload, answer):
                deterministic = False
                failures.append(f"trial {i}: verify not deterministic")
            for alt in generator.wrong_candidates(payload):
                if generator.verify(payload, alt):
                    unique = False
                    failures.append(f"trial {i}: alternative answer accepted")
                    break
            if family_id == perceptual.FAMILY_ID and not perceptual.separation_ok(payload):
                unique = False
                failures.append(f"trial {i}: distractor separation below floor")
        report = {
            "family": family_id,
            "trials": trials,
            "distinct_digests": len(digests),
            "distinctness_rate": len(digests) / trials,
            "verify_deterministic": deterministic,
            "completeness": complete,
            "answer_unique": unique,
            "failures": failures[:20],
        }
        report["ok"] = (
            len(digests) == trials and deterministic and complete and unique
        )
        return report


__all__ = [
    "FamilyDescriptor",
    "Prompt",
    "FamilyRegistry",
    "DEFAULT_DESCRIPTORS",
    "perceptual",
    "reasoning",
    "attention",
]
