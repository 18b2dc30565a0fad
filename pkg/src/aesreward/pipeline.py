"""Batch evaluation: extract, lint, gate, judge, and aggregate rewards."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .agents.interactive import InteractionTrace, evaluate_interactive
from .agents.static import StaticScore, evaluate_static
from .browser.session import PageSession
from .judge.client import JudgeClient
from .lint import DEFAULT_RULES, LintReport, LintRuleSet, lint
from .reward import DEFAULT_WEIGHTS, RewardBreakdown, Weights
from .samples import CodeSample, EmptyInput, extract_html

SessionFactory = Callable[[str, str], PageSession]


@dataclass
class EvaluationContext:
    judge: JudgeClient
    session_factory: SessionFactory
    weights: Weights = DEFAULT_WEIGHTS
    n_budget: int = 3
    max_iterations: int = 15
    rules: LintRuleSet = DEFAULT_RULES
    run_static: bool = True
    run_interactive: bool = True
    artifact_dir: Path | None = None  # interaction traces land here as JSON


@dataclass
class SampleResult:
    sample: CodeSample
    lint_report: LintReport | None
    breakdown: RewardBreakdown | None
    static: StaticScore | None = None
    trace: InteractionTrace | None = None
    error: str | None = None

    @property
    def exec_pass(self) -> bool:
        return self.lint_report is not None and self.lint_report.s_exec == 1


def evaluate_sample(sample: CodeSample, ctx: EvaluationContext) -> SampleResult:
    """Evaluate one sample; never raises, failures land in the result row."""
    try:
        sample.extracted_html = extract_html(sample.raw_output)
    except EmptyInput as exc:
        return SampleResult(sample, None, None, error=f"EmptyInput: {exc}")

    report = lint(sample.extracted_html, ctx.rules)
    if report.s_exec != 1:
        return SampleResult(
            sample, report, RewardBreakdown.gated_failure(ctx.weights)
        )

    static = trace = None
    error = None
    r_static = r_interact = 0.0
    try:
        if ctx.run_static:
            static = evaluate_static(sample, ctx.judge, ctx.session_factory)
            r_static = static.normalized
        if ctx.run_interactive:
            trace = evaluate_interactive(
                sample,
                ctx.judge,
                ctx.session_factory,
                n_budget=ctx.n_budget,
                max_iterations=ctx.max_iterations,
            )
            r_interact = trace.normalized
            if ctx.artifact_dir is not None:
                trace_dir = ctx.artifact_dir / sample.id
                trace_dir.mkdir(parents=True, exist_ok=True)
                (trace_dir / "trace.json").write_text(
                    json.dumps(trace.to_dict(), indent=2, sort_keys=True) + "\n",
                    encoding="utf-8",
                )
    except Exception as exc:  # judge outages etc. become row-level errors
        error = f"{type(exc).__name__}: {exc}"
        return SampleResult(sample, report, None, static, trace, error)

    breakdown = RewardBreakdown.from_signals(1.0, r_static, r_interact, ctx.weights)
    return SampleResult(sample, report, breakdown, static, trace)


def score_batch(
    samples: list[CodeSample], ctx: EvaluationContext, parallelism: int = 1
) -> list[SampleResult]:
    """Evaluate a batch, preserving input order; one worker per sample at a time."""
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    if parallelism == 1:
        return [evaluate_sample(sample, ctx) for sample in samples]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(lambda s: evaluate_sample(s, ctx), samples))


def result_row(result: SampleResult) -> dict:
    """Stable flat schema for one output JSONL row."""
    breakdown = result.breakdown
    errors = [result.error] if result.error else []
    if result.static is not None and result.static.error:
        errors.append(f"static: {result.static.error}")
    if result.trace is not None and result.trace.error:
        errors.append(f"interactive: {result.trace.error}")
    return {
        "id": result.sample.id,
        "category": result.sample.category.value,
        "exec_pass": result.exec_pass,
        "lint_violations": (
            len(result.lint_report.violations) if result.lint_report else None
        ),
        "r_exec": breakdown.r_exec if breakdown else None,
        "r_static": breakdown.r_static if breakdown else None,
        "r_interact": breakdown.r_interact if breakdown else None,
        "total": breakdown.total if breakdown else None,
        "static_total": result.static.total if result.static else None,
        "static_alignment": result.static.alignment if result.static else None,
        "static_aesthetics": result.static.aesthetics if result.static else None,
        "static_structure": result.static.structure if result.static else None,
        "interact_raw": result.trace.s_interact if result.trace else None,
        "interact_attempted": result.trace.attempted if result.trace else None,
        "error": "; ".join(errors) if errors else None,
    }


def rows_to_jsonl(results: list[SampleResult]) -> str:
    return "".join(
        json.dumps(result_row(r), sort_keys=True, ensure_ascii=True) + "\n" for r in results
    )
