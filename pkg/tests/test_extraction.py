import pytest
from hypothesis import given
from hypothesis import strategies as st

from aesreward.samples import (
    Category,
    CodeSample,
    EmptyInput,
    extract_html,
    extract_into,
    parse_category,
    sample_from_record,
)


class TestExtractHtml:
    def test_single_tagged_block(self):
        assert extract_html("before ```html\n<p>hi</p>\n``` after") == "<p>hi</p>"

    def test_no_fences_identity_fallback(self):
        assert extract_html("<div>x</div>") == "<div>x</div>"

    def test_first_tagged_block_wins(self):
        # Oracle: scanning fences by hand, the first html-tagged block holds <a></a>.
        raw = "```html\n<a></a>\n``` ... ```html\n<b></b>\n```"
        assert extract_html(raw) == "<a></a>"

    def test_untagged_block_with_leading_angle(self):
        raw = "some prose\n```\n<section>body</section>\n```\nmore prose"
        assert extract_html(raw) == "<section>body</section>"

    def test_untagged_block_without_leading_angle_skipped(self):
        raw = "```\nplain words\n```"
        assert extract_html(raw) == raw

    def test_other_language_tag_not_extracted(self):
        raw = "```css\n<div>looks like html</div>\n```"
        assert extract_html(raw) == raw

    def test_unterminated_block_extends_to_end(self):
        assert extract_html("```html\n<main>truncated") == "<main>truncated"

    def test_tagged_block_preferred_over_earlier_untagged(self):
        raw = "```\n<u>first</u>\n```\n```html\n<t>tagged</t>\n```"
        assert extract_html(raw) == "<t>tagged</t>"

    def test_empty_blocks_never_win(self):
        raw = "```html\n```\n<p>body</p>"
        assert extract_html(raw) == raw

    def test_whitespace_only_input_rejected(self):
        with pytest.raises(EmptyInput):
            extract_html("   \n\t  ")

    def test_case_insensitive_language_tag(self):
        assert extract_html("```HTML\n<p>x</p>\n```") == "<p>x</p>"


@given(st.text(min_size=1).filter(lambda s: s.strip()))
def test_fallback_totality(raw):
    assert extract_html(raw)  # never empty, never raises for non-blank input


@given(st.text(min_size=1).filter(lambda s: s.strip()))
def test_idempotence(raw):
    once = extract_html(raw)
    assert extract_html(once) == once


class TestSamples:
    def test_parse_category_aliases(self):
        assert parse_category("GeneralWebsite") is Category.GENERAL_WEBSITE
        assert parse_category("General Website") is Category.GENERAL_WEBSITE
        assert parse_category("3D Design") is Category.THREE_D_DESIGN
        assert parse_category("game_dev") is Category.GAME_DEV
        assert parse_category("UI component") is Category.UI_COMPONENT
        assert parse_category("data visualization") is Category.DATA_VISUALIZATION

    def test_parse_category_rejects_unknown(self):
        with pytest.raises(ValueError):
            parse_category("Mobile App")

    def test_topics_match_judge_vocabulary(self):
        assert {c.topic for c in Category} == {
            "General website",
            "Game dev",
            "Data visualization",
            "3D design",
            "UI component",
        }

    def test_extract_into_fills_field(self):
        sample = CodeSample("s1", Category.GAME_DEV, "do", "```html\n<p>g</p>\n```")
        assert extract_into(sample).extracted_html == "<p>g</p>"

    def test_record_requires_fields(self):
        with pytest.raises(ValueError, match="missing"):
            sample_from_record({"id": "x"})

    def test_duplicate_ids_rejected(self, tmp_path):
        from aesreward.samples import read_samples_jsonl

        path = tmp_path / "batch.jsonl"
        row = '{"id": "a", "category": "GameDev", "instruction": "i", "output": "<x>"}\n'
        path.write_text(row + row)
        with pytest.raises(ValueError, match="duplicate"):
            read_samples_jsonl(path)
