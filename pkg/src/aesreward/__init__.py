"""Agentic reward evaluation for web-design code samples.

Three cooperating evaluators produce the reward signal: a rule-based HTML
checker (execution), a screenshot judge (static aesthetics), and a web
agent that interacts with the rendered page (interactive aesthetics).
The package also ships the group-advantage and preference-set math used
to train on those rewards, plus benchmark and reliability statistics.
"""

from .actions import Action, ActionKind, UnknownAction, format_action, parse_action
from .lint import DEFAULT_RULES, LintReport, LintRuleSet, LintViolation, exec_reward, lint
from .reward import (
    DEFAULT_WEIGHTS,
    GroupTooSmall,
    PreferencePair,
    RewardBreakdown,
    RewardGroup,
    SampledGroup,
    SurrogateConfig,
    Weights,
    aggregate,
    build_dpo_pairs,
    build_rft_set,
    clipped_surrogate_term,
    group_advantages,
    kl_penalty_term,
)
from .samples import Category, CodeSample, EmptyInput, extract_html, extract_into

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionKind",
    "Category",
    "CodeSample",
    "DEFAULT_RULES",
    "DEFAULT_WEIGHTS",
    "EmptyInput",
    "GroupTooSmall",
    "LintReport",
    "LintRuleSet",
    "LintViolation",
    "PreferencePair",
    "RewardBreakdown",
    "RewardGroup",
    "SampledGroup",
    "SurrogateConfig",
    "UnknownAction",
    "Weights",
    "aggregate",
    "build_dpo_pairs",
    "build_rft_set",
    "clipped_surrogate_term",
    "exec_reward",
    "extract_html",
    "extract_into",
    "format_action",
    "group_advantages",
    "kl_penalty_term",
    "lint",
    "parse_action",
]
