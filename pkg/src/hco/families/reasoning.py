"""Interactive reasoning: evaluate a short chained-arithmetic program.

The prompt lists a start value and chained integer operations, then asks
either for the final value or whether it clears a threshold. Answers are
exact; every intermediate stays within +/-1,000,000.
"""

from __future__ import annotations

from .. import _kernels

FAMILY_ID = "reasoning"

VALUE_LIMIT = 1_000_000
_MUL_FEASIBLE = 100_000  # |value| bound under which a x9 multiply stays safe


def build(seed: bytes, difficulty: int = 1) -> tuple[dict, object]:
    rng = _kernels.Rng(seed)
    depth = 2 + max(1, difficulty)
    value = 100 + rng.below(9_900)
    steps: list[list[object]] = [["start", value]]
    for _ in range(depth):
        pick = rng.below(3)
        if pick == 2 and abs(value) <= _MUL_FEASIBLE:
            operand = 2 + rng.below(8)
            value *= operand
            steps.append(["mul", operand])
        elif pick == 1:
            operand = 11 + rng.below(9_989)
            value -= operand
            steps.append(["sub", operand])
        else:
            operand = 11 + rng.below(9_989)
            value += operand
            steps.append(["add", operand])
    kind = rng.below(3)
    if kind == 0:
        payload = {"family": FAMILY_ID, "steps": steps, "question": {"kind": "value"}}
        return payload, value
    delta = 1 + rng.below(999)
    threshold = value - delta if rng.below(2) else value + delta
    op = "gt" if kind == 1 else "lt"
    payload = {
        "family": FAMILY_ID,
        "steps": steps,
        "question": {"kind": op, "threshold": threshold},
    }
    truth = value > threshold if op == "gt" else value < threshold
    return payload, "yes" if truth else "no"


def _evaluate(steps: object) -> int | None:
    if not isinstance(steps, list) or not steps:
        return None
    first = steps[0]
    if not (isinstance(first, list) and len(first) == 2 and first[0] == "start"):
        return None
    value = first[1]
    if isinstance(value, bool) or not isinstance(value, int):
        return None
    for step in steps[1:]:
        if not (isinstance(step, list) and len(step) == 2):
            return None
        op, operand = step
        if isinstance(operand, bool) or not isinstance(operand, int):
            return None
        if op == "add":
            value += operand
        elif op == "sub":
            value -= operand
        elif op == "mul":
            value *= operand
        else:
            return None
        if abs(value) > VALUE_LIMIT:
            return None
    return value


def verify(payload: dict, answer: object) -> bool:
    value = _evaluate(payload.get("steps"))
    if value is None:
        return False
    question = payload.get("question")
    if not isinstance(question, dict):
        return False
    kind = question.get("kind")
    if kind == "value":
        return not isinstance(answer, bool) and isinstance(answer, int) and answer == value
    if kind in ("gt", "lt"):
        threshold = question.get("threshold")
        if isinstance(threshold, bool) or not isinstance(threshold, int):
            return False
        truth = value > threshold if kind == "gt" else value < threshold
        return answer == ("yes" if truth else "no")
    return False


def reference_answer(payload: dict) -> object:
    value = _evaluate(payload["steps"])
    question = payload["question"]
    if question["kind"] == "value":
        return value
    truth = value > question["threshold"] if question["kind"] == "gt" else value < question["threshold"]
    return "yes" if truth else "no"


def wrong_answer(payload: dict) -> object:
    right = reference_answer(payload)
    if isinstance(right, int):
        return right + 1
    return "no" if right == "yes" else "yes"


def wrong_candidates(payload: dict) -> list[object]:
    return [wrong_answer(payload)]
