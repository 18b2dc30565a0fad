"""Evaluation samples and recovery of HTML from raw model output."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path


class EmptyInput(ValueError):
    """Raw model output is empty or whitespace-only."""


class Category(Enum):
    GENERAL_WEBSITE = "GeneralWebsite"
    THREE_D_DESIGN = "3DDesign"
    DATA_VISUALIZATION = "DataVisualization"
    GAME_DEV = "GameDev"
    UI_COMPONENT = "UIComponent"

    @property
    def topic(self) -> str:
        """Judge-facing topic string for this category."""
        return _TOPICS[self]


_TOPICS = {
    Category.GENERAL_WEBSITE: "General website",
    Category.THREE_D_DESIGN: "3D design",
    Category.DATA_VISUALIZATION: "Data visualization",
    Category.GAME_DEV: "Game dev",
    Category.UI_COMPONENT: "UI component",
}

# Accept the canonical enum value plus display-name spellings ("General Website",
# "general_website", ...) by stripping everything but alphanumerics.
_CATEGORY_ALIASES = {
    re.sub(r"[^a-z0-9]", "", key.lower()): cat
    for cat in Category
    for key in (cat.value, cat.topic)
}


def parse_category(value: str) -> Category:
    norm = re.sub(r"[^a-z0-9]", "", value.lower())
    try:
        return _CATEGORY_ALIASES[norm]
    except KeyError:
        raise ValueError(f"unknown category: {value!r}") from None


@dataclass
class CodeSample:
    """One evaluation unit: instruction, category, raw model output, extracted HTML."""

    id: str
    category: Category
    instruction: str
    raw_output: str
    extracted_html: str = ""


_FENCE_LANG = re.compile(r"[A-Za-z0-9_+#.-]*")


def _fenced_blocks(text: str) -> list[tuple[str, str]]:
    """All ```-fenced blocks as (language, body) pairs, in order.

    An opener is any occurrence of three backticks followed by an optional
    language word; the body starts on the next line and runs to the next
    three-backtick occurrence, or to the end of text when the closing fence
    is missing (tolerates truncated generations).
    """
    blocks: list[tuple[str, str]] = []
    pos = 0
    while (start := text.find("```", pos)) != -1:
        lang_match = _FENCE_LANG.match(text, start + 3)
        assert lang_match is not None
        lang = lang_match.group(0).lower()
        line_end = text.find("\n", lang_match.end())
        close = text.find("```", lang_match.end())
        if close == -1:
            body = text[line_end + 1 :] if line_end != -1 else ""
            blocks.append((lang, body))
            break
        body = "" if (line_end == -1 or line_end > close) else text[line_end + 1 : close]
        blocks.append((lang, body))
        pos = close + 3
    return blocks


def extract_html(raw_output: str) -> str:
    """Recover evaluable HTML from raw model output.

    Preference order: first ```html block, then first untagged block whose
    content starts with ``<``, then the raw output verbatim. Blocks with
    whitespace-only bodies never win.
    """
    if not raw_output.strip():
        raise EmptyInput("raw output is empty after whitespace trimming")
    blocks = [(lang, body.strip()) for lang, body in _fenced_blocks(raw_output)]
    blocks = [(lang, body) for lang, body in blocks if body]
    for lang, body in blocks:
        if lang == "html":
            return body
    for lang, body in blocks:
        if not lang and body.startswith("<"):
            return body
    return raw_output


def extract_into(sample: CodeSample) -> CodeSample:
    """Return a copy of ``sample`` with ``extracted_html`` filled."""
    return replace(sample, extracted_html=extract_html(sample.raw_output))


def read_samples_jsonl(path: str | Path) -> list[CodeSample]:
    """Load one batch of input records ({"id", "category", "instruction", "output"})."""
    samples = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            sample = sample_from_record(record)
            if sample.id in seen:
                raise ValueError(f"{path}:{lineno}: duplicate sample id {sample.id!r}")
            seen.add(sample.id)
            samples.append(sample)
    return samples


def sample_from_record(record: dict) -> CodeSample:
    missing = {"id", "category", "instruction", "output"} - record.keys()
    if missing:
        raise ValueError(f"input record missing fields: {sorted(missing)}")
    return CodeSample(
        id=str(record["id"]),
        category=parse_category(record["category"]),
        instruction=record["instruction"],
        raw_output=record["output"],
    )
