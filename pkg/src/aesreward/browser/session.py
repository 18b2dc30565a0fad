"""Session types and the backend-independent page-session contract."""

from __future__ import annotations

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from ..actions import Action
from . import png as pnglib


class RenderFailure(RuntimeError):
    """The page could not be rendered (launch, load, or capture failed)."""


class LaunchFailure(RenderFailure):
    pass


class LoadTimeout(RenderFailure):
    pass


class CaptureFailure(RenderFailure):
    pass


class ScriptInjectionFailure(RenderFailure):
    pass


class SessionCrashed(RuntimeError):
    pass


class MissingLabel(KeyError):
    """Action references a label absent from the last marking pass."""


class StaleElement(RuntimeError):
    """The targeted element disappeared since the last marking pass."""


class ScreenshotKind(Enum):
    FULL_PAGE = "FullPage"
    VIEWPORT = "Viewport"
    LABELED_VIEWPORT = "LabeledViewport"


class ElementKind(Enum):
    CLICKABLE = "Clickable"
    TYPEABLE = "Typeable"


@dataclass
class SessionConfig:
    viewport_width: int = 1280
    viewport_height: int = 800
    page_load_timeout: float = 10.0
    action_settle_delay: float = 1.0
    artifact_dir: Path | None = None
    marker_script: str | None = None

    def __post_init__(self):
        if self.viewport_width <= 0 or self.viewport_height <= 0:
            raise ValueError("viewport dimensions must be positive")
        if self.page_load_timeout <= 0:
            raise ValueError("page_load_timeout must be positive")
        if self.action_settle_delay < 0:
            raise ValueError("action_settle_delay must be >= 0")
        if self.artifact_dir is not None:
            self.artifact_dir = Path(self.artifact_dir)


@dataclass(frozen=True)
class Screenshot:
    image_bytes: bytes
    width: int
    height: int
    kind: ScreenshotKind
    captured_at: float
    path: Path | None = None  # set when persisted under artifact_dir

    @classmethod
    def from_png(cls, data: bytes, kind: ScreenshotKind) -> "Screenshot":
        try:
            width, height = pnglib.dimensions(data)
        except ValueError as exc:
            raise CaptureFailure(f"invalid screenshot: {exc}") from exc
        return cls(data, width, height, kind, time.monotonic())


@dataclass(frozen=True)
class MarkedElement:
    label: int
    bbox: tuple[float, float, float, float]  # (x, y, w, h) in CSS pixels
    tag: str
    text_snippet: str
    kind: ElementKind

    @property
    def center(self) -> tuple[float, float]:
        x, y, w, h = self.bbox
        return x + w / 2, y + h / 2


@dataclass(frozen=True)
class ActionOutcome:
    applied: bool
    screenshot: Screenshot


def parse_marker_result(raw: str | dict) -> list[MarkedElement]:
    """Validate the marker script's JSON payload into element metadata."""
    import json

    data = json.loads(raw) if isinstance(raw, str) else raw
    elements = []
    for entry in data.get("elements", []):
        bbox = tuple(float(v) for v in entry["bbox"])
        if len(bbox) != 4:
            raise ValueError(f"bbox must have 4 entries: {entry['bbox']!r}")
        elements.append(
            MarkedElement(
                label=int(entry["label"]),
                bbox=bbox,
                tag=str(entry.get("tag", "")),
                text_snippet=str(entry.get("text", ""))[:80],
                kind=ElementKind(entry.get("kind", "Clickable")),
            )
        )
    labels = [e.label for e in elements]
    if labels != list(range(1, len(labels) + 1)):
        raise ValueError(f"labels must be contiguous from 1, got {labels}")
    return elements


class PageSession(ABC):
    """One loaded page; confined to one worker at a time."""

    def __init__(self, config: SessionConfig, sample_id: str = "page"):
        self.config = config
        self.sample_id = sample_id
        self._step = 0
        self.last_marks: dict[int, MarkedElement] = {}

    # -- backend contract -------------------------------------------------
    @abstractmethod
    def capture_full_page(self) -> Screenshot: ...

    @abstractmethod
    def capture_viewport(self) -> Screenshot: ...

    @abstractmethod
    def mark_elements(self) -> tuple[list[MarkedElement], Screenshot]: ...

    @abstractmethod
    def perform(self, action: Action) -> ActionOutcome: ...

    @abstractmethod
    def network_requests(self) -> list[str]:
        """URLs the page attempted to fetch; must stay empty offline."""

    @abstractmethod
    def dom_snapshot(self) -> str: ...

    @abstractmethod
    def close(self) -> None: ...

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    # -- shared helpers ----------------------------------------------------
    def external_requests(self) -> list[str]:
        return [
            url
            for url in self.network_requests()
            if not url.startswith(("file:", "data:", "about:", "blob:"))
        ]

    def _require_label(self, label: int | None) -> MarkedElement:
        if label is None or label not in self.last_marks:
            known = sorted(self.last_marks)
            raise MissingLabel(f"label {label} not in last marking pass (known: {known})")
        return self.last_marks[label]

    def _persist(self, shot: Screenshot) -> Screenshot:
        if self.config.artifact_dir is not None:
            directory = self.config.artifact_dir / self.sample_id
            directory.mkdir(parents=True, exist_ok=True)
            path = directory / f"{self._step}.png"
            path.write_bytes(shot.image_bytes)
            self._step += 1
            return replace(shot, path=path)
        return shot
