"""Static aesthetics: render, capture the full page, and judge one screenshot."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..browser.session import PageSession, RenderFailure
from ..judge.client import JudgeClient
from ..samples import CodeSample

SessionFactory = Callable[[str, str], PageSession]  # (html, sample_id) -> session


@dataclass(frozen=True)
class StaticScore:
    alignment: int
    aesthetics: int
    structure: int
    total: int
    feedback: str
    normalized: float  # total / 100
    error: str | None = None

    @classmethod
    def failed(cls, error: str) -> "StaticScore":
        return cls(0, 0, 0, 0, "", 0.0, error=error)


def evaluate_static(
    sample: CodeSample,
    judge: JudgeClient,
    session_factory: SessionFactory,
) -> StaticScore:
    """Full-page screenshot judged on alignment/aesthetics/structure.

    Rendering failures yield a zero score without consulting the judge.
    """
    try:
        session = session_factory(sample.extracted_html, sample.id)
    except RenderFailure as exc:
        return StaticScore.failed(f"{type(exc).__name__}: {exc}")
    with session:
        try:
            shot = session.capture_full_page()
        except RenderFailure as exc:
            return StaticScore.failed(f"{type(exc).__name__}: {exc}")
        score = judge.score_pointwise(sample.category.topic, sample.instruction, shot)
    return StaticScore(
        alignment=score.alignment,
        aesthetics=score.aesthetics,
        structure=score.structure,
        total=score.total,
        feedback=score.feedback,
        normalized=score.total / 100,
    )
