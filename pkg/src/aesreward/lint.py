"""Rule-based HTML validation and the binary execution signal.

The default rule set enables twelve checks: html5 doctype, lowercase tag
and attribute names, double-quoted attribute values, tag pairing, a
self-close allowlist, unique ids, required ``alt``/``lang`` attributes,
a utf-8 charset declaration, a viewport meta element, and a non-empty
title. CSS and JavaScript content is never inspected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .htmltokens import (
    VOID_ELEMENTS,
    Token,
    TokenKind,
    Tokenizer,
    TokenizerFailure,
)

DEFAULT_SELF_CLOSE_ALLOWLIST = frozenset({"br", "img", "input", "link", "meta"})

FATAL_RULE_ID = "tokenizer-failure"


@dataclass(frozen=True)
class LintRuleSet:
    """Enabled checks; defaults match the shipped validation configuration."""

    doctype_html5: bool = True
    tagname_lowercase: bool = True
    attr_lowercase: bool = True
    attr_value_double_quotes: bool = True
    tag_pair: bool = True
    tag_self_close: bool = True
    id_unique: bool = True
    alt_require: bool = True
    lang_require: bool = True
    meta_charset_utf_8: bool = True
    meta_viewport: bool = True
    title_require: bool = True
    self_close_allowlist: frozenset[str] = DEFAULT_SELF_CLOSE_ALLOWLIST

    def enabled_rule_ids(self) -> tuple[str, ...]:
        return tuple(rule_id for rule_id, _ in _RULES if getattr(self, _flag_name(rule_id)))


DEFAULT_RULES = LintRuleSet()


@dataclass(frozen=True)
class LintViolation:
    rule_id: str
    line: int
    column: int
    message: str


@dataclass(frozen=True)
class LintReport:
    violations: tuple[LintViolation, ...]
    s_exec: int  # +1 iff violations is empty
    fatal: bool = False

    def to_dict(self) -> dict:
        return {
            "s_exec": self.s_exec,
            "fatal": self.fatal,
            "violations": [
                {
                    "rule": v.rule_id,
                    "line": v.line,
                    "column": v.column,
                    "message": v.message,
                }
                for v in self.violations
            ],
        }


def lint(html: str, rules: LintRuleSet = DEFAULT_RULES) -> LintReport:
    """Check ``html`` against every enabled rule, collecting all violations."""
    if not html:
        raise ValueError("html must be non-empty")
    try:
        tokenizer = Tokenizer(html)
        tokens = list(tokenizer.tokens())
    except TokenizerFailure as exc:
        violation = LintViolation(FATAL_RULE_ID, 1, 1, str(exc))
        return LintReport((violation,), s_exec=-1, fatal=True)

    violations: list[LintViolation] = []
    for rule_id, check in _RULES:
        if getattr(rules, _flag_name(rule_id)):
            violations.extend(check(tokens, rules))
    violations.sort(key=lambda v: (v.line, v.column, v.rule_id))
    return LintReport(tuple(violations), s_exec=1 if not violations else -1)


def exec_reward(report: LintReport) -> float:
    """Binary execution reward: +1.0 on a clean report, -1.0 otherwise."""
    return 1.0 if report.s_exec == 1 else -1.0


def _flag_name(rule_id: str) -> str:
    return rule_id.replace("-", "_")


def _start_tags(tokens: list[Token]):
    for token in tokens:
        if token.kind is TokenKind.START_TAG:
            yield token


def _check_doctype(tokens: list[Token], rules: LintRuleSet) -> list[LintViolation]:
    for token in tokens:
        if token.kind is TokenKind.COMMENT:
            continue
        if token.kind is TokenKind.TEXT and not token.name.strip():
            continue
        if token.kind is TokenKind.DOCTYPE:
            parts = token.name.strip().split(None, 1)
            if (
                len(parts) == 2
                and parts[0].lower() == "doctype"
                and parts[1].strip().lower() == "html"
            ):
                return []
        return [
            LintViolation(
                "doctype-html5",
                token.line,
                token.column,
                "document must start with the html5 doctype",
            )
        ]
    return [LintViolation("doctype-html5", 1, 1, "document must start with the html5 doctype")]


def _check_tagname_lowercase(tokens, rules):
    out = []
    for token in tokens:
        if token.kind in (TokenKind.START_TAG, TokenKind.END_TAG) and token.name != token.name.lower():
            out.append(
                LintViolation(
                    "tagname-lowercase",
                    token.line,
                    token.column,
                    f"tag name '{token.name}' must be lowercase",
                )
            )
    return out


def _check_attr_lowercase(tokens, rules):
    out = []
    for token in _start_tags(tokens):
        for attr in token.attrs:
            if attr.name != attr.name.lower():
                out.append(
                    LintViolation(
                        "attr-lowercase",
                        attr.line,
                        attr.column,
                        f"attribute name '{attr.name}' must be lowercase",
                    )
                )
    return out


def _check_attr_value_double_quotes(tokens, rules):
    out = []
    for token in _start_tags(tokens):
        for attr in token.attrs:
            if attr.quote in ("'", ""):
                out.append(
                    LintViolation(
                        "attr-value-double-quotes",
                        attr.line,
                        attr.column,
                        f"value of attribute '{attr.name}' must be double-quoted",
                    )
                )
    return out


def _check_tag_pair(tokens, rules):
    out = []
    stack: list[Token] = []
    for token in tokens:
        if token.kind is TokenKind.START_TAG:
            name = token.name.lower()
            if name in VOID_ELEMENTS or token.self_closing:
                continue
            stack.append(token)
        elif token.kind is TokenKind.END_TAG:
            name = token.name.lower()
            if name in VOID_ELEMENTS:
                continue
            names = [t.name.lower() for t in stack]
            if name not in names:
                out.append(
                    LintViolation(
                        "tag-pair",
                        token.line,
                        token.column,
                        f"no matching open tag for '</{token.name}>'",
                    )
                )
                continue
            while stack:
                opened = stack.pop()
                if opened.name.lower() == name:
                    break
                out.append(_unclosed(opened))
    out.extend(_unclosed(opened) for opened in stack)
    return out


def _unclosed(token: Token) -> LintViolation:
    return LintViolation(
        "tag-pair",
        token.line,
        token.column,
        f"tag '<{token.name}>' is missing its closing tag",
    )


def _check_tag_self_close(tokens, rules):
    out = []
    for token in _start_tags(tokens):
        if token.self_closing and token.name.lower() not in rules.self_close_allowlist:
            out.append(
                LintViolation(
                    "tag-self-close",
                    token.line,
                    token.column,
                    f"self-closing syntax is not allowed for '<{token.name}>'",
                )
            )
    return out


def _check_id_unique(tokens, rules):
    out = []
    seen: dict[str, tuple[int, int]] = {}
    for token in _start_tags(tokens):
        for attr in token.attrs:
            if attr.name.lower() == "id" and attr.value is not None:
                if attr.value in seen:
                    out.append(
                        LintViolation(
                            "id-unique",
                            attr.line,
                            attr.column,
                            f"duplicate id '{attr.value}'",
                        )
                    )
                else:
                    seen[attr.value] = (attr.line, attr.column)
    return out


def _check_alt_require(tokens, rules):
    out = []
    for token in _start_tags(tokens):
        if token.name.lower() == "img" and not _has_attr(token, "alt"):
            out.append(
                LintViolation(
                    "alt-require",
                    token.line,
                    token.column,
                    "img element is missing an alt attribute",
                )
            )
    return out


def _check_lang_require(tokens, rules):
    for token in _start_tags(tokens):
        if token.name.lower() == "html":
            if _has_attr(token, "lang"):
                return []
            return [
                LintViolation(
                    "lang-require",
                    token.line,
                    token.column,
                    "html element is missing a lang attribute",
                )
            ]
    return [LintViolation("lang-require", 1, 1, "document has no html element with a lang attribute")]


def _check_meta_charset(tokens, rules):
    wrong: Token | None = None
    for token in _start_tags(tokens):
        if token.name.lower() == "meta":
            charset = _attr_value(token, "charset")
            if charset is None:
                continue
            if charset.strip().lower() == "utf-8":
                return []
            wrong = wrong or token
    if wrong is not None:
        return [
            LintViolation(
                "meta-charset-utf-8",
                wrong.line,
                wrong.column,
                "charset declaration is not utf-8",
            )
        ]
    return [LintViolation("meta-charset-utf-8", 1, 1, "missing meta charset utf-8 declaration")]


def _check_meta_viewport(tokens, rules):
    for token in _start_tags(tokens):
        if token.name.lower() == "meta":
            name = _attr_value(token, "name")
            if name is not None and name.strip().lower() == "viewport":
                return []
    return [LintViolation("meta-viewport", 1, 1, "missing viewport meta element")]


def _check_title_require(tokens, rules):
    head_depth = 0
    title_token: Token | None = None
    first_title: Token | None = None
    buf: list[str] = []
    for token in tokens:
        if token.kind is TokenKind.START_TAG:
            name = token.name.lower()
            if name == "head" and not token.self_closing:
                head_depth += 1
            elif name == "title" and not token.self_closing:
                first_title = first_title or token
                if head_depth > 0:
                    title_token = token
                    buf = []
        elif token.kind is TokenKind.END_TAG:
            name = token.name.lower()
            if name == "head":
                head_depth = max(head_depth - 1, 0)
            elif name == "title" and title_token is not None:
                if "".join(buf).strip():
                    return []
                title_token = None
        elif token.kind is TokenKind.TEXT and title_token is not None:
            buf.append(token.name)
    anchor = first_title
    if anchor is not None:
        return [
            LintViolation(
                "title-require",
                anchor.line,
                anchor.column,
                "title element inside head must be non-empty",
            )
        ]
    return [LintViolation("title-require", 1, 1, "missing non-empty title element inside head")]


def _has_attr(token: Token, name: str) -> bool:
    return any(attr.name.lower() == name for attr in token.attrs)


def _attr_value(token: Token, name: str) -> str | None:
    for attr in token.attrs:
        if attr.name.lower() == name:
            return attr.value
    return None


_RULES: tuple[tuple[str, Callable], ...] = (
    ("doctype-html5", _check_doctype),
    ("tagname-lowercase", _check_tagname_lowercase),
    ("attr-lowercase", _check_attr_lowercase),
    ("attr-value-double-quotes", _check_attr_value_double_quotes),
    ("tag-pair", _check_tag_pair),
    ("tag-self-close", _check_tag_self_close),
    ("id-unique", _check_id_unique),
    ("alt-require", _check_alt_require),
    ("lang-require", _check_lang_require),
    ("meta-charset-utf-8", _check_meta_charset),
    ("meta-viewport", _check_meta_viewport),
    ("title-require", _check_title_require),
)

RULE_IDS = tuple(rule_id for rule_id, _ in _RULES)
