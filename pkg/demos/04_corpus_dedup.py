#!/usr/bin/env python3
"""Walkthrough: thin a synthetic instruction corpus down to cluster
representatives with seeded k-means."""

import numpy as np

from aesreward.dedup import EmbeddedInstruction, kmeans_dedup


def main():
    rng = np.random.default_rng(7)
    themes = {
        "shop": [8.0, 0.0, 0.0],
        "game": [0.0, 8.0, 0.0],
        "chart": [0.0, 0.0, 8.0],
    }
    items = []
    for theme, center in themes.items():
        for i in range(40):
            vector = np.asarray(center) + rng.normal(scale=0.6, size=3)
            items.append(
                EmbeddedInstruction(
                    id=f"{theme}-{i:02d}",
                    text=f"{theme} instruction #{i}",
                    vector=tuple(vector),
                )
            )

    print(f"corpus: {len(items)} near-duplicate instructions in 3 themes")
    kept = kmeans_dedup(items, k=3, seed=0)
    print("representatives:", ", ".join(sorted(kept)))

    # The same seed always picks the same survivors.
    assert kmeans_dedup(items, k=3, seed=0) == kept
    print("rerun with the same seed is identical")

    # A larger k keeps more, but never duplicates.
    larger = kmeans_dedup(items, k=10, seed=1)
    print(f"k=10 keeps {len(larger)} items, {len(set(larger))} unique")


if __name__ == "__main__":
    main()
