"""Acceptance suite: one test per exit criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Every tolerance is pinned here, not configured elsewhere.
"""

import itertools
import json
import math
import random
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from aesreward.agents.interactive import evaluate_interactive
from aesreward.bench import agreement_ratio, kendall, plot_metrics, spearman, topk_overlap
from aesreward.browser.session import SessionConfig
from aesreward.browser.stub import StubPageSession
from aesreward.cli import main
from aesreward.dedup import EmbeddedInstruction, kmeans_dedup
from aesreward.judge.client import JudgeClient, JudgeEndpoint
from aesreward.lint import RULE_IDS, lint
from aesreward.pipeline import EvaluationContext, evaluate_sample
from aesreward.reward import (
    RewardBreakdown,
    SampledGroup,
    aggregate,
    build_dpo_pairs,
    build_rft_set,
    clipped_surrogate_term,
    group_advantages,
    kl_penalty_term,
)
from aesreward.samples import Category, CodeSample

from helpers.scripted_judge import ScriptedTransport, agent_planning, agent_step

FIXTURES = Path(__file__).parent / "fixtures"


def ok(name: str):
    print(f"ACCEPTANCE PASS: {name}")


def test_lint_rule_isolation_suite():
    start = time.perf_counter()
    for rule_id in RULE_IDS:
        bad = (FIXTURES / "lint" / f"{rule_id}.bad.html").read_text()
        good = (FIXTURES / "lint" / f"{rule_id}.good.html").read_text()
        assert {v.rule_id for v in lint(bad).violations} == {rule_id}, rule_id
        assert lint(good).violations == ()
    master = lint((FIXTURES / "lint" / "master.html").read_text())
    assert master.s_exec == 1
    elapsed = time.perf_counter() - start
    assert len(RULE_IDS) == 12
    assert elapsed < 1.0, f"rule suite took {elapsed:.3f}s"
    ok(f"lint rule suite: 12/12 rules isolated, master clean, {elapsed * 1000:.0f} ms")


def test_reward_math_oracle_equivalence():
    rng = random.Random(424242)
    checked = 0
    for _ in range(1000):
        size = rng.randint(2, 16)
        rewards = [rng.uniform(-10, 10) for _ in range(size)]
        if rng.random() < 0.08:
            rewards = [rewards[0]] * size
        got = group_advantages(rewards)
        mean = sum(rewards) / size
        std = math.sqrt(sum((r - mean) ** 2 for r in rewards) / size)
        want = [0.0] * size if std < 1e-9 else [(r - mean) / std for r in rewards]
        assert got == pytest.approx(want, abs=1e-9)
        if std >= 1e-9:
            shift, scale = rng.uniform(-5, 5), rng.uniform(0.1, 10)
            assert group_advantages([r + shift for r in rewards]) == pytest.approx(got, abs=1e-9)
            assert group_advantages([r * scale for r in rewards]) == pytest.approx(got, abs=1e-9)
        else:
            assert got == [0.0] * size
        checked += 1
    assert checked == 1000
    ok("group advantages: 1000 random groups match the definitional oracle @1e-9")


def test_surrogate_and_kl_terms_grid():
    ratios = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 4.0]
    advantages = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0]
    epsilons = [0.1, 0.2, 0.5]
    for ratio, advantage, epsilon in itertools.product(ratios, advantages, epsilons):
        clipped = min(max(ratio, 1 - epsilon), 1 + epsilon)
        want = min(ratio * advantage, clipped * advantage)
        assert clipped_surrogate_term(ratio, advantage, epsilon) == pytest.approx(want, abs=1e-12)
    points = [-2.0, -1.0, -0.3, 0.0, 0.3, 1.0, 2.0]
    for current, reference in itertools.product(points, points):
        diff = reference - current
        want = math.exp(diff) - diff - 1
        got = kl_penalty_term(current, reference)
        assert got == pytest.approx(want, abs=1e-12)
        assert got >= 0.0
        if current == reference:
            assert got == 0.0
    ok("clipped surrogate and KL terms match hand formulas on the full grid @1e-12")


def test_reward_aggregation_worked_examples():
    good = RewardBreakdown.from_signals(1.0, 0.8, 2 / 3)
    exact = float(Fraction(1, 10) + Fraction(8, 10) * Fraction(8, 10) + Fraction(1, 10) * Fraction(2, 3))
    assert aggregate(good) == pytest.approx(exact, abs=1e-12)
    assert round(aggregate(good), 5) == 0.80667
    gated = RewardBreakdown.gated_failure()
    assert aggregate(gated) == -0.1
    assert gated.total == -0.1
    ok("reward aggregation: (1, 0.8, 2/3) -> 0.80667 and gated failure -> -0.1")


def test_rank_statistics_exhaustive_and_fixtures():
    for n in range(2, 7):
        identity = list(range(1, n + 1))
        for perm in itertools.permutations(identity):
            d2 = sum((x - y) ** 2 for x, y in zip(identity, perm))
            want_s = 1 - 6 * d2 / (n * (n * n - 1))
            assert spearman(identity, list(perm)) == pytest.approx(want_s, abs=1e-12)
            concordant = sum(
                1 for i in range(n) for j in range(i + 1, n)
                if (identity[i] - identity[j]) * (perm[i] - perm[j]) > 0
            )
            discordant = n * (n - 1) // 2 - concordant
            want_k = (concordant - discordant) / (n * (n - 1) / 2)
            assert kendall(identity, list(perm)) == pytest.approx(want_k, abs=1e-12)

    topk_fixtures = [
        (list("abcde"), list("abcde"), 3, 1.0),
        (list("abcde"), list("edcba"), 5, 1.0),
        (list("abcde"), list("cdeab"), 2, 0.0),
        (list("abcde"), list("aXbYc"), 3, 2 / 3),
        (list("abcdef"), list("abcfed"), 4, 3 / 4),
        (list("abcdef"), list("fedcba"), 3, 0.0),
        (list("ab"), list("ba"), 1, 0.0),
        (list("ab"), list("ab"), 2, 1.0),
        (list("abcd"), list("badc"), 2, 1.0),
        (list("abcd"), list("dcba"), 2, 0.0),
    ]
    for a, b, k, want in topk_fixtures:
        assert topk_overlap(a, b, k) == pytest.approx(want)
    agreement_fixtures = [
        (["win"] * 4, ["win"] * 4, 1.0),
        (["win", "tie"], ["lose", "tie"], 0.5),
        (["tie"], ["tie"], 1.0),
        (["win", "win", "tie", "lose"], ["win", "lose", "tie", "lose"], 3 / 4),
        (["tie", "tie"], ["win", "lose"], 0.0),
        (["win", "lose"], ["lose", "win"], 0.0),
        (["win", "tie", "lose"], ["win", "tie", "lose"], 1.0),
        (["lose"] * 5, ["lose", "lose", "tie", "lose", "win"], 3 / 5),
        (["[[A>>B]]", "[[A>B]]"], ["win", "win"], 1.0),
        (["[[A<B]]", "[[A=B]]"], ["lose", "tie"], 1.0),
    ]
    for a, b, want in agreement_fixtures:
        assert agreement_ratio(a, b) == pytest.approx(want)
    ok("rank statistics: exhaustive n<=6 vs brute force @1e-12, 20 fixtures hand-counted")


def test_dpo_rft_builders_vs_oracles():
    rng = random.Random(5150)
    groups = []
    for i in range(500):
        size = rng.randint(2, 10)
        precision = rng.choice([1, 2, 8])
        rewards = tuple(round(rng.uniform(0, 1), precision) for _ in range(size))
        outputs = tuple(f"o{i}-{j}" for j in range(size))
        groups.append(SampledGroup(str(i), f"p{i}", outputs, rewards))
    pairs, skipped = build_dpo_pairs(groups)
    rft = build_rft_set(groups)
    pair_iter = iter(pairs)
    expected_skips = 0
    for group in groups:
        best = max(range(len(group.rewards)), key=lambda j: (group.rewards[j], -j))
        worst = min(range(len(group.rewards)), key=lambda j: (group.rewards[j], j))
        assert rft[int(group.prompt_id)] == (group.prompt, group.outputs[best])
        if group.rewards[best] == group.rewards[worst]:
            expected_skips += 1
            continue
        pair = next(pair_iter)
        assert (pair.prompt, pair.winner, pair.loser) == (
            group.prompt, group.outputs[best], group.outputs[worst],
        )
    assert skipped == expected_skips
    assert next(pair_iter, None) is None
    # degenerate and tie rules
    tied = SampledGroup("t", "p", ("a", "b", "c"), (0.9, 0.1, 0.9))
    pairs, _ = build_dpo_pairs([tied])
    assert (pairs[0].winner, pairs[0].loser) == ("a", "b")
    assert build_dpo_pairs([SampledGroup("d", "p", ("a", "b"), (0.5, 0.5))]) == ([], 1)
    ok(f"DPO/RFT builders: 500 random groups match argmax/argmin oracles ({skipped} skipped)")


def test_kmeans_dedup_gaussian_clusters():
    rng = np.random.default_rng(31337)
    centers = np.zeros((4, 8))
    for i in range(4):
        centers[i, i] = 25.0
    truth = np.repeat(np.arange(4), 50)
    points = centers[truth] + rng.normal(scale=1.0, size=(200, 8))
    items = [
        EmbeddedInstruction(id=f"v{i:03d}", text="", vector=tuple(points[i]))
        for i in range(200)
    ]
    truth_by_id = {items[i].id: int(truth[i]) for i in range(200)}
    successes = 0
    for seed in range(100):
        kept = kmeans_dedup(items, k=4, max_iters=50, seed=seed)
        if len(kept) == 4 and {truth_by_id[i] for i in kept} == {0, 1, 2, 3}:
            successes += 1
        assert kmeans_dedup(items, k=4, max_iters=50, seed=seed) == kept  # exact determinism
    assert successes >= 95, f"only {successes}/100 seeded runs split the true clusters"
    ok(f"k-means dedup: {successes}/100 seeded runs pick one representative per cluster")


def test_plot_metrics_worked_example():
    metrics = plot_metrics([80, 70, 60, None])
    assert metrics.err_rate == 0.25
    assert metrics.avg == 70.0
    assert metrics.good_rate == 0.25
    ok("plot metrics: [80, 70, 60, absent] -> err 0.25, avg 70, good 0.25")


def test_end_to_end_replay_golden(tmp_path, capsys, monkeypatch):
    import socket

    def no_network(*args, **kwargs):
        raise AssertionError("replay run attempted a network connection")

    monkeypatch.setattr(socket, "create_connection", no_network)
    monkeypatch.setattr(socket.socket, "connect", no_network)

    e2e = FIXTURES / "e2e"
    golden = (e2e / "golden_breakdowns.jsonl").read_bytes()
    start = time.perf_counter()
    outputs = []
    for run in range(2):
        out = tmp_path / f"rows{run}.jsonl"
        code = main([
            "score", str(e2e / "batch.jsonl"),
            "--replay", str(e2e / "cassettes"),
            "--backend", "stub",
            "--settle-delay", "0",
            "--out", str(out),
        ])
        assert code == 0
        outputs.append(out.read_bytes())
    elapsed = time.perf_counter() - start
    assert outputs[0] == golden, "replay output diverged from the golden file"
    assert outputs[0] == outputs[1], "two replay runs were not byte-identical"
    assert elapsed < 60.0

    rows = [json.loads(line) for line in outputs[0].decode().splitlines()]
    assert len(rows) == 6
    broken = next(r for r in rows if r["id"] == "e2e-broken")
    assert broken["exec_pass"] is False
    assert broken["total"] == -0.1

    # Call-count audit: the lint-failing sample must trigger zero judge calls.
    class CountingTransport:
        calls = 0

        def __call__(self, *args):
            type(self).calls += 1
            return "{}"

    transport = CountingTransport()
    judge = JudgeClient(
        endpoint=JudgeEndpoint(base_url="http://audit.invalid"), transport=transport
    )
    broken_output = next(
        json.loads(line)["output"]
        for line in (e2e / "batch.jsonl").read_text().splitlines()
        if json.loads(line)["id"] == "e2e-broken"
    )
    ctx = EvaluationContext(
        judge=judge,
        session_factory=lambda html, sid: StubPageSession(
            html, SessionConfig(action_settle_delay=0.0), sid
        ),
    )
    result = evaluate_sample(
        CodeSample("e2e-broken", Category.GENERAL_WEBSITE, "audit", broken_output), ctx
    )
    assert transport.calls == 0
    assert result.breakdown.total == -0.1
    ok(f"end-to-end replay: golden byte-identical twice, gated -0.1, zero judge calls, {elapsed:.1f}s")


def test_interactive_trace_arithmetic():
    page = (
        '<!DOCTYPE html><html lang="en"><head><meta charset="utf-8"><title>x</title></head>'
        '<body><button>a</button><input type="search"><button>b</button>'
        "<script>var s=1;</script></body></html>"
    )
    scripts = {
        "one-zero-one": (
            [
                agent_planning(),
                agent_step("NaN", "Click [1]"),
                agent_step(1, "Click [2]", label=1),
                agent_step(0, "Click [3]", label=2),
                agent_step(1, "FINISH", label=3),
            ],
            (2, 3, 2 / 3),
        ),
        "one-nan-one": (
            [
                agent_planning(),
                agent_step("NaN", "Click [1]"),
                agent_step(1, "Type [2]; [term]", label=1),
                agent_step("NaN", "Click [3]", label=2),
                agent_step(1, "FINISH", label=3),
            ],
            (2, 2, 2 / 3),
        ),
        "immediate-finish": (
            [agent_planning(), agent_step("NaN", "FINISH")],
            (0, 0, 0.0),
        ),
    }
    for name, (script, (want_s, want_attempted, want_norm)) in scripts.items():
        transport = ScriptedTransport(agent_scripts={"drive the page": script})
        judge = JudgeClient(
            endpoint=JudgeEndpoint(base_url="http://trace.invalid"),
            transport=transport,
            backoff_base=0.0,
        )
        sample = CodeSample(f"trace-{name}", Category.GENERAL_WEBSITE, "drive the page", page)
        sample.extracted_html = page
        trace = evaluate_interactive(
            sample,
            judge,
            lambda html, sid: StubPageSession(html, SessionConfig(action_settle_delay=0.0), sid),
            n_budget=3,
        )
        assert trace.s_interact == want_s, name
        assert trace.attempted == want_attempted, name
        assert trace.normalized == pytest.approx(want_norm), name
    ok("interactive traces: [1,0,1], [1,NaN,1], FINISH -> s 2/2/0, normalized 2/3, 2/3, 0")
