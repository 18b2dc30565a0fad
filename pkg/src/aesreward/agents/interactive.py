"""Interactive aesthetics: plan, act stepwise, score each interaction binary."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from ..actions import Action, ActionKind, UnknownAction
from ..browser.session import (
    MissingLabel,
    PageSession,
    RenderFailure,
    SessionCrashed,
    Screenshot,
    StaleElement,
)
from ..judge import prompts
from ..judge.client import JudgeClient
from ..judge.replies import JudgeReplyError, StepScore
from ..samples import Category, CodeSample

SessionFactory = Callable[[str, str], PageSession]

OBSERVATION_MARKER = "Observation: the labeled screenshot is attached."


@dataclass
class StepRecord:
    iteration: int
    label: int | None
    action: Action | None  # None for synthetic records (crash backfill)
    score: StepScore  # 1 success, 0 failure, None for NaN (non-scoring)
    reasoning: str = ""
    pre_screenshot: Screenshot | None = None
    post_screenshot: Screenshot | None = None


@dataclass
class InteractionTrace:
    plan_thought: str
    steps: list[StepRecord]
    attempted: int
    s_interact: int
    n_budget: int
    normalized: float
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "plan_thought": self.plan_thought,
            "attempted": self.attempted,
            "s_interact": self.s_interact,
            "n_budget": self.n_budget,
            "normalized": self.normalized,
            "error": self.error,
            "steps": [
                {
                    "iteration": s.iteration,
                    "label": s.label,
                    "action": None if s.action is None else _action_name(s.action),
                    "score": "NaN" if s.score is None else s.score,
                    "reasoning": s.reasoning,
                    "pre_screenshot": _shot_ref(s.pre_screenshot),
                    "post_screenshot": _shot_ref(s.post_screenshot),
                }
                for s in self.steps
            ],
        }


def _action_name(action: Action) -> str:
    from ..actions import format_action

    return format_action(action)


def _shot_ref(shot: Screenshot | None) -> str | None:
    if shot is None:
        return None
    return str(shot.path) if shot.path is not None else f"<unsaved {shot.kind.value}>"


def _attempted(steps: list[StepRecord]) -> int:
    return sum(1 for s in steps if s.score in (0, 1))


def _successes(steps: list[StepRecord]) -> int:
    return sum(1 for s in steps if s.score == 1)


def _finish(plan_thought: str, steps: list[StepRecord], n_budget: int, error: str | None) -> InteractionTrace:
    s_interact = _successes(steps)
    return InteractionTrace(
        plan_thought=plan_thought,
        steps=steps,
        attempted=_attempted(steps),
        s_interact=s_interact,
        n_budget=n_budget,
        normalized=(s_interact / n_budget) if n_budget > 0 else 0.0,
        error=error,
    )


def system_prompt(category: Category) -> str:
    extra = prompts.GAME_EXTRA_PROMPT if category is Category.GAME_DEV else ""
    return prompts.render("interactive-step", GAME_EXTRA_PROMPT=extra)


def evaluate_interactive(
    sample: CodeSample,
    judge: JudgeClient,
    session_factory: SessionFactory,
    n_budget: int = 3,
    max_iterations: int = 15,
) -> InteractionTrace:
    """Run the web agent on one page and aggregate its binary step scores.

    The first turn is a planning reply (thought only). Every later reply
    scores the previous action and proposes the next one; the loop ends on
    FINISH, when the budget of scored interactions is spent, or at the
    iteration cap. Agent failures score 0, never abort the trace.
    """
    if n_budget < 0:
        raise ValueError("n_budget must be >= 0")
    if max_iterations < n_budget + 2:
        raise ValueError("max_iterations must be at least n_budget + 2")

    try:
        session = session_factory(sample.extracted_html, sample.id)
    except RenderFailure as exc:
        return _finish("", [], n_budget, f"{type(exc).__name__}: {exc}")

    with session:
        try:
            _, observation = session.mark_elements()
        except (RenderFailure, SessionCrashed) as exc:
            return _finish("", [], n_budget, f"{type(exc).__name__}: {exc}")

        history: list[dict] = [
            {"role": "system", "content": system_prompt(sample.category)},
            {
                "role": "user",
                "content": (
                    f"Topic: {sample.category.topic}\n"
                    f"Detailed description: {sample.instruction}"
                ),
            },
        ]
        try:
            plan = judge.next_agent_step(history, observation, planning=True)
        except (JudgeReplyError, UnknownAction) as exc:
            return _finish("", [], n_budget, f"planning failed: {exc}")
        history.append({"role": "user", "content": OBSERVATION_MARKER})
        history.append({"role": "assistant", "content": plan.raw})

        steps: list[StepRecord] = []
        pending: StepRecord | None = None
        error: str | None = None
        crashed = False

        for iteration in range(1, max_iterations + 1):
            try:
                reply = judge.next_agent_step(history, observation, planning=False)
            except (JudgeReplyError, UnknownAction) as exc:
                if pending is not None:
                    steps.append(replace(pending, score=0, reasoning=f"unscored: {exc}"))
                    pending = None
                try:
                    _, observation = session.mark_elements()
                except (RenderFailure, SessionCrashed) as crash:
                    error = f"{type(crash).__name__}: {crash}"
                    crashed = isinstance(crash, SessionCrashed)
                    break
                continue
            history.append({"role": "user", "content": OBSERVATION_MARKER})
            history.append({"role": "assistant", "content": reply.raw})

            if pending is not None:
                steps.append(
                    replace(
                        pending,
                        score=reply.step_score,
                        reasoning=reply.reasoning or "",
                        label=reply.numerical_label or pending.label,
                    )
                )
                pending = None

            assert reply.action is not None
            if reply.action.kind is ActionKind.FINISH:
                break
            if _attempted(steps) >= n_budget:
                break

            try:
                outcome = session.perform(reply.action)
            except (MissingLabel, StaleElement) as exc:
                steps.append(
                    StepRecord(
                        iteration=iteration,
                        label=reply.action.label,
                        action=reply.action,
                        score=0,
                        reasoning=f"{type(exc).__name__}: {exc}",
                        pre_screenshot=observation,
                    )
                )
                continue
            except SessionCrashed as exc:
                error = f"SessionCrashed: {exc}"
                crashed = True
                break

            pending = StepRecord(
                iteration=iteration,
                label=reply.action.label,
                action=reply.action,
                score=None,
                pre_screenshot=observation,
                post_screenshot=outcome.screenshot,
            )
            try:
                _, observation = session.mark_elements()
            except (RenderFailure, SessionCrashed) as exc:
                error = f"{type(exc).__name__}: {exc}"
                crashed = isinstance(exc, SessionCrashed)
                break

        if pending is not None:
            steps.append(replace(pending, score=0, reasoning="trace ended before scoring"))
            pending = None
        if crashed:
            for _ in range(n_budget - _attempted(steps)):
                steps.append(
                    StepRecord(
                        iteration=-1,
                        label=None,
                        action=None,
                        score=0,
                        reasoning="session crashed before this planned step",
                    )
                )

    return _finish(plan.thought, steps, n_budget, error)
