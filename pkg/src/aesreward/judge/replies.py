"""Parsing and validation of structured judge replies."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum

from ..actions import Action, UnknownAction, parse_action


class JudgeReplyError(ValueError):
    """Base class for reply parse/validation failures (retryable)."""


class MalformedReply(JudgeReplyError):
    pass


class InconsistentTotal(JudgeReplyError):
    """Declared total does not equal the sum of the subscores."""


class UnknownSymbol(JudgeReplyError):
    """Comparison reply does not contain exactly one known verdict token."""


@dataclass(frozen=True)
class PointwiseScore:
    alignment: int  # 0-40
    aesthetics: int  # 0-30
    structure: int  # 0-30
    total: int  # 0-100
    feedback: str = ""


@dataclass(frozen=True)
class AblationScore:
    alignment: int  # 0-20
    aesthetics: int  # 0-50
    structure: int  # 0-30
    total: int  # 0-100
    feedback: str = ""


class Verdict(Enum):
    A_MUCH_BETTER = "[[A>>B]]"
    A_BETTER = "[[A>B]]"
    TIE = "[[A=B]]"
    B_BETTER = "[[A<B]]"
    B_MUCH_BETTER = "[[A<<B]]"


MIRRORED_VERDICT = {
    Verdict.A_MUCH_BETTER: Verdict.B_MUCH_BETTER,
    Verdict.A_BETTER: Verdict.B_BETTER,
    Verdict.TIE: Verdict.TIE,
    Verdict.B_BETTER: Verdict.A_BETTER,
    Verdict.B_MUCH_BETTER: Verdict.A_MUCH_BETTER,
}


@dataclass(frozen=True)
class PairwiseVerdict:
    score_a: PointwiseScore
    score_b: PointwiseScore
    symbol: Verdict
    feedback: str = ""


# Score for one performed interaction: 1 success, 0 failure, None for NaN
# (a non-scoring half-step, e.g. typing that awaits its search click).
StepScore = int | None


@dataclass(frozen=True)
class AgentReply:
    thought: str
    numerical_label: int | None = None
    step_score: StepScore = None
    has_score: bool = False
    reasoning: str | None = None
    action: Action | None = None  # None only in planning-stage replies
    raw: str = ""  # verbatim reply text, kept for the conversation history


def strip_code_fences(text: str) -> str:
    stripped = text.strip()
    if not stripped.startswith("```"):
        return text
    lines = stripped.splitlines()
    if lines and lines[0].startswith("```"):
        lines = lines[1:]
    if lines and lines[-1].strip().startswith("```"):
        lines = lines[:-1]
    return "\n".join(lines)


def first_json_object(text: str) -> dict:
    """Parse the first balanced {...} object in the reply.

    Judges often wrap JSON in prose or code fences; both are tolerated.
    """
    text = strip_code_fences(text)
    start = text.find("{")
    while start != -1:
        depth = 0
        in_string = False
        escaped = False
        for i in range(start, len(text)):
            ch = text[i]
            if in_string:
                if escaped:
                    escaped = False
                elif ch == "\\":
                    escaped = True
                elif ch == '"':
                    in_string = False
            elif ch == '"':
                in_string = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    try:
                        parsed = json.loads(text[start : i + 1])
                    except json.JSONDecodeError:
                        break
                    if isinstance(parsed, dict):
                        return parsed
                    break
        start = text.find("{", start + 1)
    raise MalformedReply("no JSON object found in reply")


def _int_score(obj: dict, key: str, lo: int, hi: int, *aliases: str) -> int:
    value = None
    for name in (key, *aliases):
        if name in obj:
            value = obj[name]
            break
    if value is None:
        raise MalformedReply(f"reply is missing {key!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
        raise MalformedReply(f"{key} must be an integer, got {value!r}")
    value = int(value)
    if not lo <= value <= hi:
        raise MalformedReply(f"{key}={value} outside range {lo}-{hi}")
    return value


def _scores_from(obj: dict, ranges: tuple[int, int, int]) -> tuple[int, int, int, int]:
    alignment = _int_score(obj, "alignment_score", 0, ranges[0])
    aesthetics = _int_score(obj, "aesthetics_score", 0, ranges[1])
    structure = _int_score(obj, "structure_score", 0, ranges[2])
    total = _int_score(obj, "total_score", 0, 100, "Total Score")
    declared_sum = alignment + aesthetics + structure
    if total != declared_sum:
        raise InconsistentTotal(
            f"total {total} != {alignment}+{aesthetics}+{structure}={declared_sum}"
        )
    return alignment, aesthetics, structure, total


def parse_pointwise(reply: str) -> PointwiseScore:
    obj = first_json_object(reply)
    scores = _scores_from(obj, (40, 30, 30))
    return PointwiseScore(*scores, feedback=str(obj.get("feedback", "")))


def parse_ablation(reply: str) -> AblationScore:
    obj = first_json_object(reply)
    scores = _scores_from(obj, (20, 50, 30))
    return AblationScore(*scores, feedback=str(obj.get("feedback", "")))


def parse_pairwise(reply: str) -> PairwiseVerdict:
    obj = first_json_object(reply)
    found = [v for v in Verdict if v.value in reply]
    if len(found) != 1:
        raise UnknownSymbol(
            "expected exactly one comparison token, found "
            + (", ".join(v.value for v in found) if found else "none")
        )
    side_scores = []
    for side in ("Image A Score", "Image B Score"):
        block = obj.get(side)
        if not isinstance(block, dict):
            raise MalformedReply(f"reply is missing the {side!r} block")
        side_scores.append(PointwiseScore(*_scores_from(block, (40, 30, 30))))
    return PairwiseVerdict(
        score_a=side_scores[0],
        score_b=side_scores[1],
        symbol=found[0],
        feedback=str(obj.get("feedback", "")),
    )


_FIELD_NAMES = ("Thought", "Numerical_Label", "Score", "Reasoning", "Action", "Observation")
_FIELD_RE = re.compile(r"^\s*(%s):\s?(.*)$" % "|".join(_FIELD_NAMES))


def _split_fields(text: str) -> dict[str, str]:
    fields: dict[str, list[str]] = {}
    current: str | None = None
    for line in text.splitlines():
        match = _FIELD_RE.match(line)
        if match:
            current = match.group(1)
            if current in fields:
                raise MalformedReply(f"duplicate field {current!r} in agent reply")
            fields[current] = [match.group(2)]
        elif current is not None:
            fields[current].append(line)
        elif line.strip():
            raise MalformedReply(f"unexpected text before first field: {line.strip()!r}")
    return {name: "\n".join(parts).strip() for name, parts in fields.items()}


def parse_agent_reply(text: str, *, planning: bool) -> AgentReply:
    """Parse one web-agent reply against the line-oriented grammar.

    Planning-stage replies carry a thought only; interaction-stage replies
    must carry Thought, Score, and Action (Numerical_Label and Reasoning
    are optional).
    """
    fields = _split_fields(text)
    if "Thought" not in fields:
        raise MalformedReply("agent reply is missing 'Thought:'")
    if planning:
        return AgentReply(thought=fields["Thought"], raw=text)

    if "Score" not in fields:
        raise MalformedReply("interaction-stage reply is missing 'Score:'")
    if "Action" not in fields:
        raise MalformedReply("interaction-stage reply is missing 'Action:'")
    raw_score = fields["Score"].strip()
    if raw_score == "NaN":
        score: StepScore = None
    elif raw_score in ("0", "1"):
        score = int(raw_score)
    else:
        raise MalformedReply(f"Score must be 0, 1, or NaN, got {raw_score!r}")
    label: int | None = None
    if raw_label := fields.get("Numerical_Label", "").strip():
        if not raw_label.isdigit():
            raise MalformedReply(f"Numerical_Label must be an integer, got {raw_label!r}")
        label = int(raw_label)
    try:
        action = parse_action(fields["Action"])
    except UnknownAction as exc:
        raise UnknownAction(str(exc)) from None
    return AgentReply(
        thought=fields["Thought"],
        numerical_label=label,
        step_score=score,
        has_score=True,
        reasoning=fields.get("Reasoning"),
        action=action,
        raw=text,
    )
