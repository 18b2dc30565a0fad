"""Instruction-corpus deduplication by k-means representative selection."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class KOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class EmbeddedInstruction:
    id: str
    text: str
    vector: tuple[float, ...]


def read_embedded_jsonl(path) -> list[EmbeddedInstruction]:
    items = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            record = json.loads(line)
            items.append(
                EmbeddedInstruction(
                    id=str(record["id"]),
                    text=record.get("text", ""),
                    vector=tuple(float(v) for v in record["vector"]),
                )
            )
    return items


def read_embedded_matrix(matrix_path, manifest_path) -> list[EmbeddedInstruction]:
    """Flat binary matrix with a JSON sidecar {"ids", "dim", "dtype"}."""
    manifest = json.loads(Path(manifest_path).read_text(encoding="utf-8"))
    ids = [str(i) for i in manifest["ids"]]
    dim = int(manifest["dim"])
    dtype = np.dtype(manifest.get("dtype", "float32"))
    data = np.fromfile(matrix_path, dtype=dtype)
    if data.size != len(ids) * dim:
        raise ValueError(
            f"matrix holds {data.size} values, manifest expects {len(ids)}x{dim}"
        )
    matrix = data.reshape(len(ids), dim)
    return [
        EmbeddedInstruction(id=ids[i], text="", vector=tuple(float(v) for v in matrix[i]))
        for i in range(len(ids))
    ]


def _kmeans_pp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]), dtype=float)
    centers[0] = points[rng.integers(n)]
    closest = ((points - centers[0]) ** 2).sum(axis=1)
    for i in range(1, k):
        total = closest.sum()
        if total <= 0:  # all remaining points coincide with a chosen center
            centers[i] = points[rng.integers(n)]
            continue
        probabilities = closest / total
        centers[i] = points[rng.choice(n, p=probabilities)]
        closest = np.minimum(closest, ((points - centers[i]) ** 2).sum(axis=1))
    return centers


def kmeans_fit(
    points: np.ndarray, k: int, max_iters: int = 50, seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Lloyd iterations with seeded k-means++ init until fixpoint or cap.

    Returns (centers, assignment) with the assignment recomputed against
    the final centers.
    """
    rng = np.random.default_rng(seed)
    centers = _kmeans_pp_init(points, k, rng)
    assignment = None
    for _ in range(max_iters):
        distances = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_assignment = distances.argmin(axis=1)
        if assignment is not None and np.array_equal(new_assignment, assignment):
            break
        assignment = new_assignment
        for cluster in range(k):
            members = points[assignment == cluster]
            if len(members):
                centers[cluster] = members.mean(axis=0)
    distances = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return centers, distances.argmin(axis=1)


def kmeans_dedup(
    items: list[EmbeddedInstruction], k: int, max_iters: int = 50, seed: int = 0
) -> list[str]:
    """Keep one representative id per k-means cluster.

    Each non-empty cluster contributes the id of its member nearest the
    centroid (Euclidean), distance ties broken by the lowest id; empty
    clusters are dropped, so the result can hold fewer than ``k`` ids.
    """
    n = len(items)
    if not 1 <= k <= n:
        raise KOutOfRange(f"k must be in [1, {n}], got {k}")
    points = np.asarray([item.vector for item in items], dtype=float)
    if points.ndim != 2 or points.shape[1] < 1:
        raise ValueError("vectors must share one fixed dimension >= 1")
    if not np.all(np.isfinite(points)):
        raise ValueError("vectors must be finite")

    centers, assignment = kmeans_fit(points, k, max_iters=max_iters, seed=seed)
    distances = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)

    representatives: list[str] = []
    for cluster in range(k):
        member_indices = np.flatnonzero(assignment == cluster)
        if not len(member_indices):
            continue
        cluster_distances = distances[member_indices, cluster]
        nearest = cluster_distances.min()
        candidates = [items[i].id for i in member_indices[cluster_distances == nearest]]
        representatives.append(min(candidates))
    return representatives
