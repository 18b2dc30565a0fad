#!/usr/bin/env python3
"""Walkthrough: combine the three agent signals into one reward, then turn a
group of rewards into advantages and preference data."""

from aesreward import (
    RewardBreakdown,
    SampledGroup,
    aggregate,
    build_dpo_pairs,
    build_rft_set,
    clipped_surrogate_term,
    group_advantages,
    kl_penalty_term,
)


def main():
    # One sample that passed the checker, scored 80/100 on the screenshot,
    # and succeeded on 2 of its 3 budgeted interactions.
    good = RewardBreakdown.from_signals(1.0, 0.80, 2 / 3)
    print(f"passing sample reward: {aggregate(good):.5f}")

    # A sample the rule checker rejected: aesthetics agents never ran.
    failed = RewardBreakdown.gated_failure()
    print(f"gated failure reward:  {aggregate(failed):+.5f}\n")

    # Eight rollouts for one prompt, standardized within the group.
    rewards = [0.83, 0.61, -0.10, 0.79, 0.80, 0.55, -0.10, 0.83]
    advantages = group_advantages(rewards)
    for reward, advantage in zip(rewards, advantages):
        print(f"  reward {reward:+.2f} -> advantage {advantage:+.3f}")

    # The per-token objective pieces, evaluated at a few points.
    print("\nclipped surrogate at ratio 1.8, advantage +1, eps 0.5:",
          clipped_surrogate_term(1.8, 1.0, 0.5))
    print("kl penalty at logp_cur=-1.2, logp_ref=-1.0:",
          round(kl_penalty_term(-1.2, -1.0), 6))

    group = SampledGroup(
        prompt_id="p0",
        prompt="Design a page for a tiny record store.",
        outputs=tuple(f"candidate-{i}" for i in range(len(rewards))),
        rewards=tuple(rewards),
    )
    pairs, skipped = build_dpo_pairs([group])
    print(f"\npreference pair: winner={pairs[0].winner} loser={pairs[0].loser} (skipped {skipped})")
    print("rejection-sampling pick:", build_rft_set([group])[0][1])


if __name__ == "__main__":
    main()
