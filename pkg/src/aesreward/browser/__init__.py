from .session import (
    ActionOutcome,
    CaptureFailure,
    ElementKind,
    LaunchFailure,
    LoadTimeout,
    MarkedElement,
    MissingLabel,
    PageSession,
    RenderFailure,
    Screenshot,
    ScreenshotKind,
    ScriptInjectionFailure,
    SessionConfig,
    SessionCrashed,
    StaleElement,
    parse_marker_result,
)
from .stub import StubPageSession
from .webdriver import WebDriverBrowser, WebDriverClient, WebDriverRuntime

__all__ = [
    "ActionOutcome",
    "CaptureFailure",
    "ElementKind",
    "LaunchFailure",
    "LoadTimeout",
    "MarkedElement",
    "MissingLabel",
    "PageSession",
    "RenderFailure",
    "Screenshot",
    "ScreenshotKind",
    "ScriptInjectionFailure",
    "SessionConfig",
    "SessionCrashed",
    "StaleElement",
    "StubPageSession",
    "WebDriverBrowser",
    "WebDriverClient",
    "WebDriverRuntime",
    "open_page",
    "parse_marker_result",
]


def open_page(html, config=None, sample_id="page", backend="stub", browser=None):
    """Load ``html`` into a fresh page session.

    ``backend`` selects the deterministic in-process stub or a real
    headless browser driven over the WebDriver protocol (pass an existing
    ``WebDriverBrowser`` to share one driver across sessions).
    """
    config = config or SessionConfig()
    if backend == "stub":
        return StubPageSession(html, config, sample_id)
    if backend == "webdriver":
        owner = browser or WebDriverBrowser()
        return owner.open(html, config, sample_id)
    raise ValueError(f"unknown browser backend: {backend!r}")
