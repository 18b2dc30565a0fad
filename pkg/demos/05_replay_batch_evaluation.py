#!/usr/bin/env python3
"""Walkthrough: score a small batch end to end, twice.

The first pass talks to a scripted stand-in judge and records cassettes;
the second pass replays those cassettes with no judge access at all and
produces byte-identical rows. Pages render on the deterministic in-process
backend, so the whole run is hermetic.
"""

import json
import tempfile
from pathlib import Path

from aesreward.browser.session import SessionConfig
from aesreward.browser.stub import StubPageSession
from aesreward.judge.cassette import CassetteStore
from aesreward.judge.client import JudgeClient, JudgeEndpoint
from aesreward.pipeline import EvaluationContext, rows_to_jsonl, score_batch
from aesreward.samples import Category, CodeSample

PAGE = """<!DOCTYPE html>
<html lang="en"><head><meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>counter</title></head>
<body>
<button id="plus">+1</button><button id="reset">reset</button><button id="share">share</button>
<script>let n = 0;</script>
</body></html>"""

BROKEN = "<html><body><IMG src=x></body></html>"

POINTWISE = json.dumps(
    {"alignment_score": 31, "aesthetics_score": 24, "structure_score": 23,
     "total_score": 78, "feedback": "clean layout, modest styling"}
)

AGENT_TURNS = [
    "Thought: Click the plus button, then reset, then share.",
    "Thought: start\nScore: NaN\nReasoning: N/A\nAction: Click [1]",
    "Thought: counter moved\nNumerical_Label: 1\nScore: 1\nReasoning: +1 worked\nAction: Click [2]",
    "Thought: counter cleared\nNumerical_Label: 2\nScore: 1\nReasoning: reset worked\nAction: FINISH",
]


def scripted_judge(messages, model, temperature):
    if "distinguished website design judger" in messages[0]["content"]:
        turn = sum(1 for m in messages if m.get("role") == "assistant")
        return AGENT_TURNS[turn]
    return POINTWISE


def run(mode, cassette_dir, transport):
    judge = JudgeClient(
        endpoint=JudgeEndpoint(base_url="http://scripted.invalid", model="demo"),
        transport=transport,
        cassettes=CassetteStore(cassette_dir),
        mode=mode,
    )
    ctx = EvaluationContext(
        judge=judge,
        session_factory=lambda html, sid: StubPageSession(
            html, SessionConfig(action_settle_delay=0.0), sid
        ),
    )
    batch = [
        CodeSample("counter", Category.UI_COMPONENT, "a click counter widget", f"```html\n{PAGE}\n```"),
        CodeSample("broken", Category.GENERAL_WEBSITE, "a storefront page", BROKEN),
    ]
    return rows_to_jsonl(score_batch(batch, ctx))


def main():
    with tempfile.TemporaryDirectory() as tmp:
        cassettes = Path(tmp) / "cassettes"
        recorded = run("record", cassettes, scripted_judge)
        print("recorded cassettes:", len(list(cassettes.glob("*.json"))))

        def no_network(*args):
            raise AssertionError("replay must not call the judge")

        replayed = run("replay", cassettes, no_network)
        assert replayed == recorded
        print("replay is byte-identical, no judge traffic\n")

        for line in replayed.splitlines():
            row = json.loads(line)
            print(f"  {row['id']:>8}: exec_pass={row['exec_pass']}  total={row['total']}")


if __name__ == "__main__":
    main()
