"""Command-line entry point wiring all modules into user-facing commands."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as benchmod
from . import dedup as dedupmod
from .config import build_context, load_config
from .lint import DEFAULT_RULES, lint
from .pipeline import result_row, rows_to_jsonl, score_batch
from .reward import (
    DEFAULT_WEIGHTS,
    GroupTooSmall,
    RewardBreakdown,
    SampledGroup,
    Weights,
    build_dpo_pairs,
    build_rft_set,
    group_advantages,
)
from .samples import read_samples_jsonl


def _parse_weights(text: str) -> tuple[float, float, float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("weights must be 'w_exec,w_static,w_interact'")
    return tuple(parts)  # type: ignore[return-value]


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key = value config file")
    parser.add_argument("--weights", type=_parse_weights, help="w_exec,w_static,w_interact")
    parser.add_argument("--n-budget", type=int, dest="n_budget")
    parser.add_argument("--parallelism", type=int)
    parser.add_argument("--replay", metavar="DIR", help="replay judge cassettes from DIR")
    parser.add_argument("--record", metavar="DIR", help="record judge cassettes into DIR")
    parser.add_argument("--judge-model", dest="judge_model")
    parser.add_argument("--backend", choices=["auto", "stub", "webdriver"], dest="browser_backend")
    parser.add_argument("--marker-script", dest="marker_script_path")
    parser.add_argument("--artifact-dir", dest="artifact_dir")
    parser.add_argument("--settle-delay", type=float, dest="action_settle_delay")
    parser.add_argument("--out", help="output file (default: stdout)")


def _run_config(args: argparse.Namespace):
    overrides = {}
    for key in (
        "n_budget",
        "parallelism",
        "judge_model",
        "browser_backend",
        "marker_script_path",
        "artifact_dir",
        "action_settle_delay",
    ):
        overrides[key] = getattr(args, key, None)
    if getattr(args, "replay", None):
        overrides["replay_dir"] = args.replay
    if getattr(args, "record", None):
        overrides["record_dir"] = args.record
    if getattr(args, "weights", None):
        overrides["w_exec"], overrides["w_static"], overrides["w_interact"] = args.weights
    return load_config(file=getattr(args, "config", None), overrides=overrides)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _read_jsonl(path: str) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(json.loads(line))
    return records


def _cmd_lint(args) -> int:
    if args.path == "-":
        html = sys.stdin.read()
    else:
        html = Path(args.path).read_text(encoding="utf-8")
    report = lint(html, DEFAULT_RULES)
    _emit(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", args.out)
    return 0 if report.s_exec == 1 else 1


def _score_command(args, run_static: bool, run_interactive: bool) -> int:
    config = _run_config(args)
    samples = read_samples_jsonl(args.batch)
    ctx = build_context(config)
    ctx.run_static = run_static
    ctx.run_interactive = run_interactive
    results = score_batch(samples, ctx, parallelism=config.parallelism)
    _emit(rows_to_jsonl(results), args.out)
    failures = sum(1 for r in results if result_row(r)["error"])
    return 1 if failures else 0


def _cmd_score(args) -> int:
    return _score_command(args, run_static=True, run_interactive=True)


def _cmd_score_static(args) -> int:
    return _score_command(args, run_static=True, run_interactive=False)


def _cmd_score_interactive(args) -> int:
    return _score_command(args, run_static=False, run_interactive=True)


def _cmd_bench(args) -> int:
    config = _run_config(args)
    cases = benchmod.read_cases_jsonl(args.cases)
    outputs = {str(r["id"]): r["output"] for r in _read_jsonl(args.outputs)}
    ctx = build_context(config)
    result = benchmod.run_bench(cases, outputs, ctx, parallelism=config.parallelism)
    _emit(benchmod.report(result, args.format), args.out)
    failures = sum(1 for row in result.rows if row.get("error"))
    return 1 if failures else 0


def _cmd_stats(args) -> int:
    if args.kind in ("ranks", "agreement") and not args.b:
        raise ValueError(f"stats {args.kind} requires two input files")
    if args.kind == "ranks":
        a, b = _read_json(args.a), _read_json(args.b)
        payload = {
            "spearman": benchmod.spearman(a, b),
            "kendall": benchmod.kendall(a, b),
        }
        if args.k:
            payload[f"top{args.k}_overlap"] = benchmod.topk_overlap(a, b, args.k)
    elif args.kind == "agreement":
        payload = {"agreement_ratio": benchmod.agreement_ratio(_read_json(args.a), _read_json(args.b))}
    else:  # plot
        metrics = benchmod.plot_metrics(_read_json(args.a))
        payload = {
            "err_rate": metrics.err_rate,
            "avg": metrics.avg,
            "good_rate": metrics.good_rate,
        }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_reward(args) -> int:
    weights = Weights(*args.weights) if args.weights else DEFAULT_WEIGHTS
    lines = []
    for record in _read_jsonl(args.breakdowns):
        breakdown = RewardBreakdown.from_signals(
            record["r_exec"], record["r_static"], record["r_interact"], weights
        )
        record["total"] = breakdown.total
        lines.append(json.dumps(record, sort_keys=True))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_advantage(args) -> int:
    lines = []
    for record in _read_jsonl(args.groups):
        record["advantages"] = group_advantages(record["rewards"])
        lines.append(json.dumps(record, sort_keys=True))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_build_pref(args) -> int:
    groups = [
        SampledGroup(
            prompt_id=str(r.get("prompt_id", i)),
            prompt=r["prompt"],
            outputs=tuple(r["outputs"]),
            rewards=tuple(r["rewards"]),
        )
        for i, r in enumerate(_read_jsonl(args.groups))
    ]
    pairs, skipped = build_dpo_pairs(groups)
    Path(args.dpo_out).write_text(
        "".join(
            json.dumps({"prompt": p.prompt, "winner": p.winner, "loser": p.loser}, sort_keys=True)
            + "\n"
            for p in pairs
        ),
        encoding="utf-8",
    )
    rft = build_rft_set(groups)
    Path(args.rft_out).write_text(
        "".join(
            json.dumps({"prompt": prompt, "output": output}, sort_keys=True) + "\n"
            for prompt, output in rft
        ),
        encoding="utf-8",
    )
    sys.stderr.write(f"dpo pairs: {len(pairs)} (skipped {skipped} degenerate), rft: {len(rft)}\n")
    return 0


def _cmd_dedup(args) -> int:
    if args.matrix:
        if not args.manifest:
            raise ValueError("--matrix requires --manifest")
        items = dedupmod.read_embedded_matrix(args.matrix, args.manifest)
    else:
        items = dedupmod.read_embedded_jsonl(args.vectors)
    ids = dedupmod.kmeans_dedup(items, k=args.k, max_iters=args.max_iters, seed=args.seed)
    _emit("".join(f"{i}\n" for i in ids), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aesreward",
        description="Agentic reward evaluation for web design samples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lint", help="rule-check an HTML document")
    p.add_argument("path", help="HTML file, or - for stdin")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_lint)

    for name, func, doc in (
        ("score", _cmd_score, "full pipeline: extract, lint, gate, judge, aggregate"),
        ("score-static", _cmd_score_static, "static aesthetics only"),
        ("score-interactive", _cmd_score_interactive, "interactive aesthetics only"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("batch", help="input JSONL ({id, category, instruction, output})")
        _add_run_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("bench", help="run benchmark cases against model outputs")
    p.add_argument("--cases", required=True)
    p.add_argument("--outputs", required=True)
    p.add_argument("--format", choices=["json", "markdown"], default="json")
    _add_run_flags(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("stats", help="rank/agreement/plot statistics")
    p.add_argument("kind", choices=["ranks", "agreement", "plot"])
    p.add_argument("a", help="JSON file (first input)")
    p.add_argument("b", nargs="?", help="JSON file (second input)")
    p.add_argument("--k", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("reward", help="aggregate reward breakdown rows")
    p.add_argument("breakdowns", help="JSONL of {r_exec, r_static, r_interact}")
    p.add_argument("--weights", type=_parse_weights)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_reward)

    p = sub.add_parser("advantage", help="group-normalized advantages")
    p.add_argument("groups", help="JSONL of {prompt_id, rewards}")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_advantage)

    p = sub.add_parser("build-pref", help="build DPO/RFT datasets from scored groups")
    p.add_argument("groups", help="JSONL of {prompt_id, prompt, outputs, rewards}")
    p.add_argument("--dpo-out", required=True)
    p.add_argument("--rft-out", required=True)
    p.set_defaults(func=_cmd_build_pref)

    p = sub.add_parser("dedup", help="k-means representative selection")
    p.add_argument("vectors", nargs="?", help="JSONL of {id, text, vector}")
    p.add_argument("--matrix", help="flat binary matrix file")
    p.add_argument("--manifest", help="JSON sidecar for --matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=50)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_dedup)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, GroupTooSmall) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
