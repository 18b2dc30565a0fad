"""Deterministic in-process page backend.

Stands in for a real headless browser in hermetic runs: screenshots are
synthesized as a pure function of (document, interaction state), and the
element metadata that the page-marker script would produce is derived
statically from the markup. Pages never touch the network.

Fixture knobs recognized inside the document:
  ``<!-- stub:page-height=N -->``  full-page height in CSS pixels
  ``<!-- stub:load-forever -->``   the page never finishes loading
"""

from __future__ import annotations

import hashlib
import re
import time

import numpy as np

from ..actions import Action, ActionKind
from ..htmltokens import VOID_ELEMENTS, TokenKind, tokenize
from . import png as pnglib
from .session import (
    ActionOutcome,
    CaptureFailure,
    ElementKind,
    LoadTimeout,
    MarkedElement,
    PageSession,
    Screenshot,
    ScreenshotKind,
    SessionConfig,
    SessionCrashed,
    parse_marker_result,
)

_HEIGHT_KNOB = re.compile(r"stub:page-height=(\d+)")
_LOAD_FOREVER_KNOB = "stub:load-forever"

_TYPEABLE_INPUT_TYPES = {"", "text", "search", "email", "url", "tel", "number", "password"}
_SNIPPET_ATTRS = ("aria-label", "value", "placeholder", "title", "alt", "id")


def _is_hidden(attrs: dict[str, str | None]) -> bool:
    if "hidden" in attrs:
        return True
    style = (attrs.get("style") or "").replace(" ", "").lower()
    return "display:none" in style or "visibility:hidden" in style


def _is_interactable(name: str, attrs: dict[str, str | None]) -> bool:
    if name in ("button", "input", "textarea", "select"):
        return True
    if name == "a" and "href" in attrs:
        return True
    if "onclick" in attrs:
        return True
    style = (attrs.get("style") or "").replace(" ", "").lower()
    return "cursor:pointer" in style


def _element_kind(name: str, attrs: dict[str, str | None]) -> ElementKind:
    if name == "textarea":
        return ElementKind.TYPEABLE
    if name == "input" and (attrs.get("type") or "").lower() in _TYPEABLE_INPUT_TYPES:
        return ElementKind.TYPEABLE
    return ElementKind.CLICKABLE


def enumerate_interactables(html: str) -> list[dict]:
    """Static stand-in for the in-page marker: interactable element metadata.

    Elements are laid out as a vertical stack of fixed-size boxes, in
    document order. Hidden elements (including descendants of hidden
    containers) and anything inside ``head`` are skipped.
    """
    entries: list[dict] = []
    hidden_depth = 0
    head_depth = 0
    for token in tokenize(html):
        if token.kind is TokenKind.START_TAG:
            name = token.name.lower()
            attrs = {a.name.lower(): a.value for a in token.attrs}
            closes = name not in VOID_ELEMENTS and not token.self_closing
            if name == "head" and closes:
                head_depth += 1
                continue
            if hidden_depth > 0 or head_depth > 0:
                if closes and hidden_depth > 0:
                    hidden_depth += 1
                continue
            if _is_hidden(attrs):
                if closes:
                    hidden_depth = 1
                continue
            if _is_interactable(name, attrs):
                index = len(entries)
                snippet = next(
                    (attrs[key] for key in _SNIPPET_ATTRS if attrs.get(key)), ""
                )
                entries.append(
                    {
                        "label": index + 1,
                        "bbox": [16, 16 + 56 * index, 160, 40],
                        "tag": name,
                        "text": snippet[:80],
                        "kind": _element_kind(name, attrs).value,
                    }
                )
        elif token.kind is TokenKind.END_TAG:
            name = token.name.lower()
            if hidden_depth > 0:
                hidden_depth -= 1
            elif name == "head" and head_depth > 0:
                head_depth -= 1
    return entries


def declared_page_height(html: str, viewport_height: int) -> int:
    if match := _HEIGHT_KNOB.search(html):
        return max(int(match.group(1)), viewport_height)
    return viewport_height


def has_script(html: str) -> bool:
    return any(
        t.kind is TokenKind.START_TAG and t.name.lower() == "script" for t in tokenize(html)
    )


def render_page_png(html: str, state: int, width: int, height: int, marked: bool) -> bytes:
    """Deterministic synthetic rendering: banded colors keyed by content+state."""
    digest = hashlib.sha256(
        f"{state}|{int(marked)}|{width}x{height}|".encode("utf-8") + html.encode("utf-8")
    ).digest()
    color_a = np.frombuffer(digest[0:3], dtype=np.uint8)
    color_b = np.frombuffer(digest[3:6], dtype=np.uint8)
    bands = (np.arange(height, dtype=np.int64) // 40) % 2
    rows = np.where(bands[:, None, None] == 0, color_a, color_b).astype(np.uint8)
    rows = np.broadcast_to(rows, (height, width, 3))
    return pnglib.encode_rgb(width, height, rows.tobytes())


class StubPageSession(PageSession):
    def __init__(self, html: str, config: SessionConfig, sample_id: str = "page"):
        super().__init__(config, sample_id)
        if _LOAD_FOREVER_KNOB in html:
            raise LoadTimeout(
                f"page did not finish loading within {config.page_load_timeout}s"
            )
        self.html = html
        self._state = 0
        self._marked = False
        self._closed = False
        self._has_script = has_script(html)
        self._elements = enumerate_interactables(html)
        self._page_height = max(
            declared_page_height(html, config.viewport_height),
            16 + 56 * len(self._elements) if self._elements else 0,
        )

    def _check_open(self, exc_type=SessionCrashed):
        if self._closed:
            raise exc_type("session is closed")

    def _shot(self, kind: ScreenshotKind, height: int) -> Screenshot:
        data = render_page_png(
            self.html, self._state, self.config.viewport_width, height, self._marked
        )
        return self._persist(Screenshot.from_png(data, kind))

    def capture_full_page(self) -> Screenshot:
        self._check_open(CaptureFailure)
        self._marked = False
        return self._shot(ScreenshotKind.FULL_PAGE, self._page_height)

    def capture_viewport(self) -> Screenshot:
        self._check_open(CaptureFailure)
        self._marked = False
        return self._shot(ScreenshotKind.VIEWPORT, self.config.viewport_height)

    def mark_elements(self) -> tuple[list[MarkedElement], Screenshot]:
        self._check_open()
        self._marked = True
        elements = parse_marker_result({"elements": self._elements})
        self.last_marks = {e.label: e for e in elements}
        shot = self._shot(ScreenshotKind.LABELED_VIEWPORT, self.config.viewport_height)
        return elements, shot

    def perform(self, action: Action) -> ActionOutcome:
        self._check_open()
        if action.kind is ActionKind.FINISH:
            raise ValueError("FINISH is a loop terminator, not a performable action")
        if action.kind in (ActionKind.CLICK, ActionKind.TYPE):
            self._require_label(action.label)
        self._marked = False
        if action.kind is ActionKind.WAIT:
            if self.config.action_settle_delay:
                time.sleep(self.config.action_settle_delay)  # the Wait duration itself
        elif self._has_script:
            self._state += 1
        if self.config.action_settle_delay:
            time.sleep(self.config.action_settle_delay)
        return ActionOutcome(applied=True, screenshot=self.capture_viewport())

    def network_requests(self) -> list[str]:
        return []

    def dom_snapshot(self) -> str:
        overlay = '<div id="page-marker-overlay"></div>' if self._marked else ""
        return self.html + overlay

    def close(self) -> None:
        self._closed = True

    # Test hook: emulate a browser crash mid-trace.
    def crash(self) -> None:
        self._closed = True
