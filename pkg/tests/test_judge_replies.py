import json

import pytest

from aesreward.actions import ActionKind, UnknownAction, parse_action
from aesreward.judge.replies import (
    InconsistentTotal,
    MalformedReply,
    PointwiseScore,
    UnknownSymbol,
    Verdict,
    first_json_object,
    parse_agent_reply,
    parse_pairwise,
    parse_pointwise,
    parse_ablation,
)


def pointwise_reply(alignment=30, aesthetics=25, structure=24, total=None, feedback="fine"):
    return json.dumps(
        {
            "alignment_score": alignment,
            "aesthetics_score": aesthetics,
            "structure_score": structure,
            "total_score": total if total is not None else alignment + aesthetics + structure,
            "feedback": feedback,
        }
    )


class TestPointwise:
    def test_direct_parse(self):
        score = parse_pointwise(pointwise_reply(30, 25, 24, 79, feedback="..."))
        assert score == PointwiseScore(30, 25, 24, 79, "...")

    def test_inconsistent_total(self):
        with pytest.raises(InconsistentTotal, match="75"):
            parse_pointwise(pointwise_reply(30, 20, 20, 75))

    def test_fenced_reply_parsed_identically(self):
        raw = pointwise_reply(30, 25, 24, 79)
        fenced = f"```json\n{raw}\n```"
        assert parse_pointwise(fenced) == parse_pointwise(raw)

    def test_prose_wrapped_json(self):
        raw = "Here is my verdict.\n" + pointwise_reply(10, 10, 10, 30) + "\nThanks."
        assert parse_pointwise(raw).total == 30

    def test_range_violations(self):
        with pytest.raises(MalformedReply):
            parse_pointwise(pointwise_reply(alignment=41, total=41 + 25 + 24))
        with pytest.raises(MalformedReply):
            parse_pointwise(pointwise_reply(aesthetics=31, total=30 + 31 + 24))
        with pytest.raises(MalformedReply):
            parse_pointwise(pointwise_reply(structure=-1, total=30 + 25 - 1))

    def test_non_integer_rejected(self):
        raw = json.dumps(
            {"alignment_score": 10.5, "aesthetics_score": 10, "structure_score": 10, "total_score": 30.5}
        )
        with pytest.raises(MalformedReply):
            parse_pointwise(raw)

    def test_missing_json(self):
        with pytest.raises(MalformedReply):
            parse_pointwise("no structured output here")

    def test_boundary_scores(self):
        assert parse_pointwise(pointwise_reply(40, 30, 30, 100)).total == 100
        assert parse_pointwise(pointwise_reply(0, 0, 0, 0)).total == 0


class TestAblation:
    def ablation_reply(self, alignment=18, aesthetics=40, structure=25, total=None):
        return json.dumps(
            {
                "alignment_score": alignment,
                "aesthetics_score": aesthetics,
                "structure_score": structure,
                "total_score": total if total is not None else alignment + aesthetics + structure,
                "feedback": "f",
            }
        )

    def test_parse(self):
        score = parse_ablation(self.ablation_reply(18, 40, 25, 83))
        assert (score.alignment, score.aesthetics, score.structure, score.total) == (18, 40, 25, 83)

    def test_alignment_over_twenty_rejected(self):
        with pytest.raises(MalformedReply):
            parse_ablation(self.ablation_reply(alignment=25, total=25 + 40 + 25))

    def test_aesthetics_up_to_fifty_allowed(self):
        assert parse_ablation(self.ablation_reply(aesthetics=50, total=18 + 50 + 25)).aesthetics == 50

    def test_total_mismatch(self):
        with pytest.raises(InconsistentTotal):
            parse_ablation(self.ablation_reply(total=99))


def pairwise_reply(symbol="[[A>B]]", a=(30, 25, 24), b=(20, 15, 14)):
    return json.dumps(
        {
            "Image A Score": {
                "alignment_score": a[0],
                "aesthetics_score": a[1],
                "structure_score": a[2],
                "Total Score": sum(a),
            },
            "Image B Score": {
                "alignment_score": b[0],
                "aesthetics_score": b[1],
                "structure_score": b[2],
                "Total Score": sum(b),
            },
            "Overall Comparison": symbol,
            "feedback": "decent",
        }
    )


class TestPairwise:
    @pytest.mark.parametrize(
        "token, verdict",
        [
            ("[[A>>B]]", Verdict.A_MUCH_BETTER),
            ("[[A>B]]", Verdict.A_BETTER),
            ("[[A=B]]", Verdict.TIE),
            ("[[A<B]]", Verdict.B_BETTER),
            ("[[A<<B]]", Verdict.B_MUCH_BETTER),
        ],
    )
    def test_symbol_tokens(self, token, verdict):
        assert parse_pairwise(pairwise_reply(token)).symbol is verdict

    def test_unknown_symbol(self):
        with pytest.raises(UnknownSymbol):
            parse_pairwise(pairwise_reply("[[A?B]]"))

    def test_two_distinct_symbols_ambiguous(self):
        raw = pairwise_reply("[[A>B]]") + " but also [[A<B]]"
        with pytest.raises(UnknownSymbol):
            parse_pairwise(raw)

    def test_side_scores_parsed(self):
        verdict = parse_pairwise(pairwise_reply())
        assert verdict.score_a.total == 79
        assert verdict.score_b.total == 49
        assert verdict.feedback == "decent"

    def test_side_total_mismatch(self):
        raw = pairwise_reply().replace('"Total Score": 79', '"Total Score": 80')
        with pytest.raises(InconsistentTotal):
            parse_pairwise(raw)

    def test_missing_side_block(self):
        raw = json.dumps({"Image A Score": {}, "Overall Comparison": "[[A=B]]"}) + " [[A=B]]"
        with pytest.raises(MalformedReply):
            parse_pairwise(raw)


class TestFirstJsonObject:
    def test_braces_inside_strings_ignored(self):
        raw = 'prefix {"feedback": "uses { and } inside", "alignment_score": 1} suffix'
        assert first_json_object(raw)["alignment_score"] == 1

    def test_nested_objects(self):
        raw = '{"outer": {"inner": 2}, "x": 3}'
        assert first_json_object(raw)["x"] == 3

    def test_skips_invalid_then_finds_valid(self):
        raw = "{not json} {\"ok\": true}"
        assert first_json_object(raw) == {"ok": True}


PLANNING_REPLY = "Thought: I will click the button, type in the search box, then finish."

INTERACTION_REPLY = """Thought: the counter incremented as expected
Numerical_Label: 2
Score: 1
Reasoning: counter went from 0 to 1
Action: Click [3]"""


class TestAgentReply:
    def test_planning_reply(self):
        reply = parse_agent_reply(PLANNING_REPLY, planning=True)
        assert reply.thought.startswith("I will click")
        assert reply.action is None
        assert not reply.has_score

    def test_interaction_reply(self):
        reply = parse_agent_reply(INTERACTION_REPLY, planning=False)
        assert reply.numerical_label == 2
        assert reply.step_score == 1
        assert reply.reasoning == "counter went from 0 to 1"
        assert reply.action.kind is ActionKind.CLICK
        assert reply.action.label == 3

    def test_missing_score_is_malformed_at_interaction_stage(self):
        with pytest.raises(MalformedReply, match="Score"):
            parse_agent_reply("Thought: plan...\nAction: Click [2]", planning=False)

    def test_finish_reply(self):
        raw = "Thought: t\nNumerical_Label: 2\nScore: 1\nReasoning: ok\nAction: FINISH"
        reply = parse_agent_reply(raw, planning=False)
        assert reply.step_score == 1
        assert reply.action.kind is ActionKind.FINISH

    def test_nan_score(self):
        raw = "Thought: typed text\nNumerical_Label: 4\nScore: NaN\nReasoning: N/A\nAction: Click [5]"
        reply = parse_agent_reply(raw, planning=False)
        assert reply.step_score is None
        assert reply.has_score

    def test_invalid_score_value(self):
        raw = "Thought: t\nScore: 2\nAction: Wait"
        with pytest.raises(MalformedReply, match="0, 1, or NaN"):
            parse_agent_reply(raw, planning=False)

    def test_multiline_thought(self):
        raw = "Thought: line one\nline two\nScore: 0\nAction: Wait"
        reply = parse_agent_reply(raw, planning=False)
        assert reply.thought == "line one\nline two"

    def test_missing_action(self):
        with pytest.raises(MalformedReply, match="Action"):
            parse_agent_reply("Thought: t\nScore: 1", planning=False)

    def test_unknown_action_surfaces(self):
        raw = "Thought: t\nScore: 1\nAction: Scroll [2]"
        with pytest.raises(UnknownAction):
            parse_agent_reply(raw, planning=False)


class TestActionGrammar:
    def test_click(self):
        action = parse_action("Click [3]")
        assert (action.kind, action.label) == (ActionKind.CLICK, 3)

    def test_type_with_spaces_in_content(self):
        action = parse_action("Type [3]; [hello world]")
        assert (action.kind, action.label, action.content) == (ActionKind.TYPE, 3, "hello world")

    def test_type_content_may_contain_brackets(self):
        assert parse_action("Type [1]; [a [b] c]").content == "a [b] c"

    @pytest.mark.parametrize("text, kind", [
        ("Wait", ActionKind.WAIT),
        ("UP", ActionKind.UP),
        ("DOWN", ActionKind.DOWN),
        ("LEFT", ActionKind.LEFT),
        ("RIGHT", ActionKind.RIGHT),
        ("FINISH", ActionKind.FINISH),
    ])
    def test_bare_actions(self, text, kind):
        assert parse_action(text).kind is kind

    @pytest.mark.parametrize("bad", ["Click 3", "Click [x]", "click [3]", "Type [3] [x]", "Scroll", "up"])
    def test_malformed_actions(self, bad):
        with pytest.raises(UnknownAction):
            parse_action(bad)
