"""Reward aggregation, group-normalized advantages, policy-objective terms,
and preference-dataset builders."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class GroupTooSmall(ValueError):
    """A reward group needs at least two members."""


ZERO_VARIANCE_EPS = 1e-9


@dataclass(frozen=True)
class Weights:
    """Per-agent mixing weights; defaults follow the training configuration."""

    w_exec: float = 0.1
    w_static: float = 0.8
    w_interact: float = 0.1

    def __post_init__(self):
        for name in ("w_exec", "w_static", "w_interact"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")


DEFAULT_WEIGHTS = Weights()


@dataclass(frozen=True)
class RewardBreakdown:
    """Signals from the three agents plus their weighted total.

    When execution failed, the aesthetics agents never ran, so both of
    their rewards are pinned to zero.
    """

    r_exec: float
    r_static: float
    r_interact: float
    total: float

    def __post_init__(self):
        if self.r_exec not in (-1.0, 1.0, -1, 1):
            raise ValueError(f"r_exec must be -1 or +1, got {self.r_exec}")
        if not 0.0 <= self.r_static <= 1.0:
            raise ValueError(f"r_static must be in [0, 1], got {self.r_static}")
        if not 0.0 <= self.r_interact <= 1.0:
            raise ValueError(f"r_interact must be in [0, 1], got {self.r_interact}")
        if self.r_exec == -1 and (self.r_static != 0 or self.r_interact != 0):
            raise ValueError("failed execution gates both aesthetics rewards to 0")

    @classmethod
    def from_signals(
        cls,
        r_exec: float,
        r_static: float,
        r_interact: float,
        weights: Weights = DEFAULT_WEIGHTS,
    ) -> "RewardBreakdown":
        total = weights.w_exec * r_exec + weights.w_static * r_static + weights.w_interact * r_interact
        return cls(r_exec, r_static, r_interact, total)

    @classmethod
    def gated_failure(cls, weights: Weights = DEFAULT_WEIGHTS) -> "RewardBreakdown":
        return cls.from_signals(-1.0, 0.0, 0.0, weights)


def aggregate(breakdown: RewardBreakdown, weights: Weights = DEFAULT_WEIGHTS) -> float:
    """Weighted sum of the three agent rewards."""
    return (
        weights.w_exec * breakdown.r_exec
        + weights.w_static * breakdown.r_static
        + weights.w_interact * breakdown.r_interact
    )


def group_advantages(rewards: list[float]) -> list[float]:
    """Standardize a group of rewards to zero mean and unit variance.

    Uses the population standard deviation; a (near-)uniform group carries
    no learning signal and maps to all-zero advantages.
    """
    if len(rewards) < 2:
        raise GroupTooSmall(f"need at least 2 rewards, got {len(rewards)}")
    arr = np.asarray(rewards, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("rewards must all be finite")
    std = float(arr.std())
    if std < ZERO_VARIANCE_EPS:
        return [0.0] * len(rewards)
    mean = float(arr.mean())
    return [float((r - mean) / std) for r in arr]


def clipped_surrogate_term(ratio: float, advantage: float, epsilon: float = 0.5) -> float:
    """Per-token clipped policy-gradient term min(r*A, clip(r, 1-eps, 1+eps)*A)."""
    if ratio <= 0:
        raise ValueError(f"probability ratio must be positive, got {ratio}")
    if epsilon <= 0:
        raise ValueError(f"clip radius must be positive, got {epsilon}")
    clipped = min(max(ratio, 1.0 - epsilon), 1.0 + epsilon)
    return min(ratio * advantage, clipped * advantage)


def kl_penalty_term(logp_current: float, logp_reference: float) -> float:
    """Nonnegative per-token KL estimate u - log(u) - 1 with u = p_ref/p_cur."""
    for value in (logp_current, logp_reference):
        if not math.isfinite(value):
            raise ValueError("log-probabilities must be finite")
    diff = logp_reference - logp_current
    return math.exp(diff) - diff - 1.0


@dataclass(frozen=True)
class SurrogateConfig:
    epsilon: float = 0.5
    beta: float = 0.001

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")


@dataclass(frozen=True)
class RewardGroup:
    """Rewards for one prompt's sampled outputs plus their advantages."""

    prompt_id: str
    rewards: tuple[float, ...]
    advantages: tuple[float, ...]

    def __post_init__(self):
        if len(self.rewards) < 2:
            raise GroupTooSmall(f"group {self.prompt_id!r} needs >= 2 rewards")
        if len(self.advantages) != len(self.rewards):
            raise ValueError("advantages and rewards must have equal length")
        if float(np.asarray(self.rewards).std()) < ZERO_VARIANCE_EPS:
            if any(a != 0.0 for a in self.advantages):
                raise ValueError("uniform groups must carry all-zero advantages")
        elif abs(sum(self.advantages)) > 1e-9 * len(self.advantages):
            raise ValueError("advantages must be zero-mean")

    @classmethod
    def from_rewards(cls, prompt_id: str, rewards: list[float]) -> "RewardGroup":
        return cls(prompt_id, tuple(rewards), tuple(group_advantages(rewards)))


@dataclass(frozen=True)
class SampledGroup:
    """One prompt with its sampled outputs and their rewards."""

    prompt_id: str
    prompt: str
    outputs: tuple[str, ...]
    rewards: tuple[float, ...]

    def __post_init__(self):
        if len(self.outputs) != len(self.rewards):
            raise ValueError("outputs and rewards must have equal length")
        if not self.outputs:
            raise ValueError("group must be non-empty")


@dataclass(frozen=True)
class PreferencePair:
    prompt: str
    winner: str
    loser: str


def _argmax(values) -> int:
    best = 0
    for i, v in enumerate(values):
        if v > values[best]:
            best = i
    return best


def _argmin(values) -> int:
    best = 0
    for i, v in enumerate(values):
        if v < values[best]:
            best = i
    return best


def build_dpo_pairs(groups: list[SampledGroup]) -> tuple[list[PreferencePair], int]:
    """Per group, pair the highest- against the lowest-reward output.

    Ties break to the lowest index; groups whose max equals their min carry
    no preference and are skipped. Returns (pairs, skipped_count).
    """
    pairs: list[PreferencePair] = []
    skipped = 0
    for group in groups:
        if len(group.outputs) < 2:
            raise GroupTooSmall(f"group {group.prompt_id!r} has fewer than 2 outputs")
        hi = _argmax(group.rewards)
        lo = _argmin(group.rewards)
        if group.rewards[hi] == group.rewards[lo]:
            skipped += 1
            continue
        pairs.append(PreferencePair(group.prompt, group.outputs[hi], group.outputs[lo]))
    return pairs, skipped


def build_rft_set(groups: list[SampledGroup]) -> list[tuple[str, str]]:
    """Per group, keep the top-reward output (ties to the lowest index)."""
    return [(g.prompt, g.outputs[_argmax(g.rewards)]) for g in groups]
