#!/usr/bin/env python3
"""Walkthrough: the reliability statistics used to compare a model ranking
produced by this evaluator against an external leaderboard."""

from aesreward.bench import (
    agreement_ratio,
    kendall,
    plot_metrics,
    rank_by_score,
    spearman,
    topk_overlap,
)


def main():
    # Benchmark totals for ten models, and the external leaderboard order.
    our_totals = {
        "model-a": 81.9, "model-b": 81.2, "model-c": 81.1, "model-d": 79.9,
        "model-e": 78.9, "model-f": 78.2, "model-g": 77.7, "model-h": 73.7,
        "model-i": 69.4, "model-j": 48.1,
    }
    external_order = ["model-a", "model-c", "model-b", "model-d", "model-e",
                      "model-f", "model-g", "model-h", "model-i", "model-j"]

    ours_order = rank_by_score(our_totals)
    our_rank = {name: i + 1 for i, name in enumerate(ours_order)}
    their_rank = {name: i + 1 for i, name in enumerate(external_order)}
    names = sorted(our_totals)
    a = [our_rank[n] for n in names]
    b = [their_rank[n] for n in names]

    print(f"spearman: {spearman(a, b):.3f}")
    print(f"kendall:  {kendall(a, b):.3f}")
    print(f"top-3 overlap: {topk_overlap(ours_order, external_order, 3):.3f}")
    print(f"top-5 overlap: {topk_overlap(ours_order, external_order, 5):.3f}")

    judge_labels = ["win", "win", "tie", "lose", "win", "tie", "lose", "win"]
    human_labels = ["win", "tie", "tie", "lose", "win", "win", "lose", "win"]
    print(f"judge-human agreement: {agreement_ratio(judge_labels, human_labels):.3f}")

    # Plot-benchmark metrics: None marks a case whose code failed to run.
    scores = [82, 91, 64, None, 77, 70, None, 88]
    metrics = plot_metrics(scores)
    print(f"\nplot benchmark: err {metrics.err_rate:.3f}, "
          f"avg {metrics.avg:.1f}, good {metrics.good_rate:.3f}")


if __name__ == "__main__":
    main()
