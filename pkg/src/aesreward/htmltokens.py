"""Error-tolerant HTML tokenizer with 1-based source positions.

Malformed constructs degrade to best-effort tokens, never to exceptions;
the only hard failure is input that cannot be treated as text at all.
Comments and CDATA sections are consumed without producing rule-relevant
tokens, and the contents of ``script``/``style`` elements are opaque raw
text.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from enum import Enum
from typing import Iterator


class TokenizerFailure(ValueError):
    """Input cannot be tokenized at all (binary garbage)."""


VOID_ELEMENTS = frozenset(
    {"area", "base", "br", "col", "embed", "hr", "img", "input",
     "link", "meta", "param", "source", "track", "wbr"}
)
RAW_TEXT_ELEMENTS = frozenset({"script", "style"})

_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
_NAME_CHARS = _NAME_START | set("0123456789-_:.")
_SPACE = set(" \t\n\r\f")


class TokenKind(Enum):
    DOCTYPE = "doctype"
    START_TAG = "start_tag"
    END_TAG = "end_tag"
    TEXT = "text"
    COMMENT = "comment"


@dataclass(frozen=True)
class Attribute:
    name: str
    value: str | None
    quote: str | None  # '"', "'", "" for unquoted; None when valueless
    line: int
    column: int


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    line: int
    column: int
    name: str = ""  # tag name (original case) or doctype/comment/text payload
    attrs: tuple[Attribute, ...] = ()
    self_closing: bool = False


class Tokenizer:
    def __init__(self, text: str):
        if "\x00" in text:
            raise TokenizerFailure("input contains NUL bytes")
        self.text = text
        self._line_starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self._line_starts.append(i + 1)
        self._lower = text.lower()

    def position(self, offset: int) -> tuple[int, int]:
        """Map a character offset to a 1-based (line, column)."""
        offset = min(max(offset, 0), max(len(self.text) - 1, 0))
        idx = bisect.bisect_right(self._line_starts, offset) - 1
        return idx + 1, offset - self._line_starts[idx] + 1

    def tokens(self) -> Iterator[Token]:
        text, n = self.text, len(self.text)
        i = 0
        raw_until: str | None = None
        while i < n:
            if raw_until is not None:
                end = self._lower.find("</" + raw_until, i)
                if end == -1:
                    yield self._text_token(i, n)
                    break
                if end > i:
                    yield self._text_token(i, end)
                i = end
                raw_until = None
                continue
            lt = text.find("<", i)
            if lt == -1:
                yield self._text_token(i, n)
                break
            if lt > i:
                yield self._text_token(i, lt)
            if text.startswith("<!--", lt):
                end = text.find("-->", lt + 4)
                i = n if end == -1 else end + 3
                yield Token(TokenKind.COMMENT, *self.position(lt))
            elif text.startswith("<![CDATA[", lt):
                end = text.find("]]>", lt + 9)
                i = n if end == -1 else end + 3
            elif text.startswith("<!", lt):
                end = text.find(">", lt + 2)
                payload = text[lt + 2 : (n if end == -1 else end)]
                i = n if end == -1 else end + 1
                yield Token(TokenKind.DOCTYPE, *self.position(lt), name=payload)
            elif text.startswith("</", lt):
                i, token = self._scan_end_tag(lt)
                if token is not None:
                    yield token
            elif lt + 1 < n and text[lt + 1] in _NAME_START:
                i, token = self._scan_start_tag(lt)
                yield token
                if not token.self_closing and token.name.lower() in RAW_TEXT_ELEMENTS:
                    raw_until = token.name.lower()
            else:
                yield self._text_token(lt, lt + 1)
                i = lt + 1
        return

    def _text_token(self, start: int, end: int) -> Token:
        return Token(TokenKind.TEXT, *self.position(start), name=self.text[start:end])

    def _scan_name(self, i: int) -> tuple[int, str]:
        start = i
        text, n = self.text, len(self.text)
        while i < n and text[i] in _NAME_CHARS:
            i += 1
        return i, text[start:i]

    def _scan_end_tag(self, lt: int) -> tuple[int, Token | None]:
        text, n = self.text, len(self.text)
        i, name = self._scan_name(lt + 2)
        gt = text.find(">", i)
        i = n if gt == -1 else gt + 1
        if not name:  # "</>" and friends: parse error, ignored like browsers do
            return i, None
        return i, Token(TokenKind.END_TAG, *self.position(lt), name=name)

    def _scan_start_tag(self, lt: int) -> tuple[int, Token]:
        text, n = self.text, len(self.text)
        i, name = self._scan_name(lt + 1)
        attrs: list[Attribute] = []
        self_closing = False
        while i < n:
            while i < n and text[i] in _SPACE:
                i += 1
            if i >= n:
                break
            ch = text[i]
            if ch == ">":
                i += 1
                break
            if ch == "<":  # unterminated tag; resume scanning at this '<'
                break
            if ch == "/":
                if text.startswith("/>", i):
                    self_closing = True
                    i += 2
                    break
                i += 1
                continue
            i, attr = self._scan_attribute(i)
            if attr is not None:
                attrs.append(attr)
        return i, Token(
            TokenKind.START_TAG,
            *self.position(lt),
            name=name,
            attrs=tuple(attrs),
            self_closing=self_closing,
        )

    def _scan_attribute(self, i: int) -> tuple[int, Attribute | None]:
        text, n = self.text, len(self.text)
        name_start = i
        while i < n and text[i] not in _SPACE and text[i] not in "=>/<":
            i += 1
        name = text[name_start:i]
        if not name:
            return i + 1, None
        line, column = self.position(name_start)
        j = i
        while j < n and text[j] in _SPACE:
            j += 1
        if j >= n or text[j] != "=":
            return i, Attribute(name, None, None, line, column)
        j += 1
        while j < n and text[j] in _SPACE:
            j += 1
        if j < n and text[j] in "\"'":
            quote = text[j]
            end = text.find(quote, j + 1)
            if end == -1:
                return n, Attribute(name, text[j + 1 :], quote, line, column)
            return end + 1, Attribute(name, text[j + 1 : end], quote, line, column)
        value_start = j
        while j < n and text[j] not in _SPACE and text[j] != ">":
            j += 1
        return j, Attribute(name, text[value_start:j], "", line, column)


def tokenize(text: str) -> list[Token]:
    return list(Tokenizer(text).tokens())
