"""Benchmark runner plus rank-reliability and plot-benchmark statistics."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .judge.replies import MIRRORED_VERDICT, Verdict
from .pipeline import EvaluationContext, SampleResult, score_batch
from .samples import Category, CodeSample, parse_category


class LengthMismatch(ValueError):
    pass


class KTooLarge(ValueError):
    pass


class EmptyList(ValueError):
    pass


class EmptyBenchmark(ValueError):
    pass


class UnsupportedFormat(ValueError):
    pass


# ---------------------------------------------------------------------------
# Rank statistics


def _average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks with ties assigned their average rank."""
    arr = np.asarray(values, dtype=float)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(len(arr), dtype=float)
    i = 0
    while i < len(arr):
        j = i
        while j + 1 < len(arr) and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def _check_paired(a: Sequence, b: Sequence, minimum: int = 2) -> None:
    if len(a) != len(b):
        raise LengthMismatch(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) < minimum:
        raise ValueError(f"need at least {minimum} items, got {len(a)}")


def spearman(ranks_a: Sequence[float], ranks_b: Sequence[float]) -> float:
    """Spearman rank correlation with average-rank tie handling."""
    _check_paired(ranks_a, ranks_b)
    ra = _average_ranks(ranks_a)
    rb = _average_ranks(ranks_b)
    da = ra - ra.mean()
    db = rb - rb.mean()
    denom = math.sqrt(float(da @ da) * float(db @ db))
    if denom == 0:
        raise ValueError("rank correlation undefined for a constant ranking")
    return float(da @ db) / denom


def kendall(ranks_a: Sequence[float], ranks_b: Sequence[float]) -> float:
    """Kendall rank correlation (tau-b when ties are present)."""
    _check_paired(ranks_a, ranks_b)
    n = len(ranks_a)
    concordant = discordant = ties_a = ties_b = 0
    for i in range(n):
        for j in range(i + 1, n):
            da = ranks_a[i] - ranks_a[j]
            db = ranks_b[i] - ranks_b[j]
            if da == 0 and db == 0:
                continue
            if da == 0:
                ties_a += 1
            elif db == 0:
                ties_b += 1
            elif (da > 0) == (db > 0):
                concordant += 1
            else:
                discordant += 1
    denom = math.sqrt(
        (concordant + discordant + ties_a) * (concordant + discordant + ties_b)
    )
    if denom == 0:
        raise ValueError("rank correlation undefined for a constant ranking")
    return (concordant - discordant) / denom


def topk_overlap(ranking_a: Sequence, ranking_b: Sequence, k: int) -> float:
    """|top-k(a) ∩ top-k(b)| / k for two ordered item rankings."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > len(ranking_a) or k > len(ranking_b):
        raise KTooLarge(f"k={k} exceeds ranking length")
    return len(set(ranking_a[:k]) & set(ranking_b[:k])) / k


_THREE_WAY = {"win", "tie", "lose"}
_COLLAPSE = {
    Verdict.A_MUCH_BETTER: "win",
    Verdict.A_BETTER: "win",
    Verdict.TIE: "tie",
    Verdict.B_BETTER: "lose",
    Verdict.B_MUCH_BETTER: "lose",
}


def collapse_verdict(value) -> str:
    """Reduce a five-way comparison verdict to win/tie/lose."""
    if isinstance(value, Verdict):
        return _COLLAPSE[value]
    if isinstance(value, str):
        lowered = value.lower()
        if lowered in _THREE_WAY:
            return lowered
        for verdict in Verdict:
            if value == verdict.value or value == verdict.name:
                return _COLLAPSE[verdict]
    raise ValueError(f"not a comparison label: {value!r}")


def agreement_ratio(labels_a: Sequence, labels_b: Sequence) -> float:
    """Fraction of positions with identical win/tie/lose labels."""
    _check_paired(labels_a, labels_b, minimum=1)
    collapsed_a = [collapse_verdict(v) for v in labels_a]
    collapsed_b = [collapse_verdict(v) for v in labels_b]
    matches = sum(1 for x, y in zip(collapsed_a, collapsed_b) if x == y)
    return matches / len(collapsed_a)


@dataclass(frozen=True)
class PlotMetrics:
    err_rate: float
    avg: float
    good_rate: float


GOOD_SCORE_THRESHOLD = 75


def plot_metrics(scores: Sequence[float | None]) -> PlotMetrics:
    """Error rate, average score, and good rate for a plot-benchmark run.

    ``None`` entries are execution failures; they count toward ``err_rate``
    and the ``good_rate`` denominator but not the average.
    """
    if len(scores) == 0:
        raise EmptyList("scores must be non-empty")
    present = [s for s in scores if s is not None]
    err_rate = (len(scores) - len(present)) / len(scores)
    avg = float(np.mean(present)) if present else 0.0
    good = sum(1 for s in present if s > GOOD_SCORE_THRESHOLD)
    return PlotMetrics(err_rate=err_rate, avg=avg, good_rate=good / len(scores))


@dataclass(frozen=True)
class SwapVerdict:
    symbol: Verdict
    disagreement: bool
    first: Verdict
    second: Verdict


def pairwise_with_swap(judge, topic, instruction, screenshot_a, screenshot_b) -> SwapVerdict:
    """Position-bias control: judge twice with images swapped and reconcile.

    If the two runs disagree after remapping the swapped labels, the
    consolidated verdict is a TIE with the disagreement flagged.
    """
    first = judge.compare_pairwise(topic, instruction, screenshot_a, screenshot_b)
    second = judge.compare_pairwise(topic, instruction, screenshot_b, screenshot_a)
    remapped = MIRRORED_VERDICT[second.symbol]
    if first.symbol is remapped:
        return SwapVerdict(first.symbol, False, first.symbol, second.symbol)
    return SwapVerdict(Verdict.TIE, True, first.symbol, second.symbol)


def rank_by_score(totals: dict[str, float]) -> list[str]:
    """Names ordered by benchmark total descending, ties broken by name."""
    return sorted(totals, key=lambda name: (-totals[name], name))


# ---------------------------------------------------------------------------
# Benchmark runner


@dataclass(frozen=True)
class BenchCase:
    id: str
    category: Category
    instruction: str


def read_cases_jsonl(path) -> list[BenchCase]:
    cases = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            record = json.loads(line)
            cases.append(
                BenchCase(
                    id=str(record["id"]),
                    category=parse_category(record["category"]),
                    instruction=record["instruction"],
                )
            )
    return cases


_ROW_FIELDS = (
    "id",
    "category",
    "alignment",
    "aesthetics",
    "structure",
    "static_total",
    "interact_raw",
    "interact_normalized",
    "exec_pass",
)


@dataclass
class BenchResult:
    rows: list[dict]
    aggregates: dict[str, float]

    def to_dict(self) -> dict:
        return {"rows": self.rows, "aggregates": self.aggregates}


def _case_row(result: SampleResult) -> dict:
    static = result.static
    trace = result.trace
    return {
        "id": result.sample.id,
        "category": result.sample.category.value,
        "alignment": static.alignment if static else 0,
        "aesthetics": static.aesthetics if static else 0,
        "structure": static.structure if static else 0,
        "static_total": static.total if static else 0,
        "interact_raw": trace.s_interact if trace else 0,
        "interact_normalized": trace.normalized if trace else 0.0,
        "exec_pass": result.exec_pass,
        "error": result.error,
    }


def aggregate_rows(rows: list[dict]) -> dict[str, float]:
    n = len(rows)
    means = {
        f"mean_{key}": float(np.mean([row[key] for row in rows]))
        for key in (
            "alignment",
            "aesthetics",
            "structure",
            "static_total",
            "interact_raw",
            "interact_normalized",
        )
    }
    means["exec_pass_rate"] = sum(1 for row in rows if row["exec_pass"]) / n
    return means


def run_bench(
    cases: list[BenchCase],
    outputs: dict[str, str],
    ctx: EvaluationContext,
    parallelism: int = 1,
) -> BenchResult:
    """Evaluate one model's outputs over the benchmark cases.

    Benchmark reporting keeps the raw 0-100 static totals and raw
    interaction sums; per-case failures land in their rows and never abort
    the batch.
    """
    if not cases:
        raise EmptyBenchmark("no benchmark cases supplied")
    missing = [case.id for case in cases if case.id not in outputs]
    if missing:
        raise ValueError(f"outputs missing for case ids: {missing[:5]}")
    samples = [
        CodeSample(
            id=case.id,
            category=case.category,
            instruction=case.instruction,
            raw_output=outputs[case.id],
        )
        for case in cases
    ]
    results = score_batch(samples, ctx, parallelism=parallelism)
    rows = [_case_row(result) for result in results]
    return BenchResult(rows=rows, aggregates=aggregate_rows(rows))


def report(result: BenchResult, format: str = "json") -> str:
    """Render a benchmark result as JSON or a markdown leaderboard table."""
    if format == "json":
        return json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n"
    if format == "markdown":
        agg = result.aggregates
        lines = [
            "| Align. | Aes. | Struct. | Total. | InterAes. | InterAes. (norm) | Exec pass |",
            "|---:|---:|---:|---:|---:|---:|---:|",
            "| {mean_alignment:.2f} | {mean_aesthetics:.2f} | {mean_structure:.2f} "
            "| {mean_static_total:.2f} | {mean_interact_raw:.2f} "
            "| {mean_interact_normalized:.3f} | {exec_pass_rate:.1%} |".format(**agg),
            "",
            "| Case | Category | Align. | Aes. | Struct. | Total. | InterAes. | Pass |",
            "|---|---|---:|---:|---:|---:|---:|---|",
        ]
        for row in result.rows:
            lines.append(
                "| {id} | {category} | {alignment} | {aesthetics} | {structure} "
                "| {static_total} | {interact_raw} | {exec_pass} |".format(**row)
            )
        return "\n".join(lines) + "\n"
    raise UnsupportedFormat(f"unknown report format: {format!r}")
