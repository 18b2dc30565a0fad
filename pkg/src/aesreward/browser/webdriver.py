"""W3C WebDriver wire client and the page-session backend built on it.

Talks plain HTTP JSON to a locally managed driver (chromedriver-style) or
to an already-running WebDriver endpoint. Pages are materialized to local
files and loaded via ``file://`` URLs, so evaluation never depends on the
network.
"""

from __future__ import annotations

import base64
import json
import os
import socket
import subprocess
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import requests

from ..actions import Action, ActionKind
from .session import (
    ActionOutcome,
    CaptureFailure,
    LaunchFailure,
    LoadTimeout,
    MarkedElement,
    PageSession,
    Screenshot,
    ScreenshotKind,
    ScriptInjectionFailure,
    SessionConfig,
    SessionCrashed,
    StaleElement,
    parse_marker_result,
)

KEY_ENTER = ""
ARROW_KEYS = {
    ActionKind.LEFT: "",
    ActionKind.UP: "",
    ActionKind.RIGHT: "",
    ActionKind.DOWN: "",
}

_READY_STATE = "return document.readyState;"
_SCROLL_DIMS = "return [document.documentElement.scrollWidth, document.documentElement.scrollHeight];"
_COLLECT_MARKS = "return window.__pageMarker.collectAndMark();"
_UNMARK = "if (window.__pageMarker) { window.__pageMarker.unmark(); }"
_CLEAR_FOCUSED = "var el = document.activeElement; if (el && ('value' in el)) { el.value = ''; }"
_TAG_AT_POINT = (
    "var el = document.elementFromPoint(arguments[0], arguments[1]);"
    " return el ? el.tagName : null;"
)
_RESOURCE_URLS = (
    "return (performance.getEntriesByType('resource') || [])"
    ".map(function(e) { return e.name; });"
)
_OUTER_HTML = "return document.documentElement.outerHTML;"


class WebDriverError(RuntimeError):
    def __init__(self, error: str, message: str, status: int):
        super().__init__(f"{error}: {message} (HTTP {status})")
        self.error = error
        self.status = status


_CRASH_ERRORS = {"invalid session id", "session not created", "no such window"}


class WebDriverClient:
    """Thin wrapper over the WebDriver REST surface used by page sessions."""

    def __init__(self, base_url: str, timeout: float = 30.0, http: requests.Session | None = None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.http = http or requests.Session()

    def _request(self, method: str, path: str, payload: dict | None = None, timeout: float | None = None):
        url = self.base_url + path
        try:
            response = self.http.request(
                method,
                url,
                json=payload if payload is not None else ({} if method == "POST" else None),
                timeout=timeout if timeout is not None else self.timeout,
            )
        except requests.Timeout:
            raise TimeoutError(f"webdriver call timed out: {method} {path}") from None
        except requests.RequestException as exc:
            raise WebDriverError("connection failure", str(exc), 0) from exc
        try:
            body = response.json()
        except ValueError:
            raise WebDriverError("invalid response", response.text[:200], response.status_code) from None
        value = body.get("value")
        if response.status_code >= 400:
            error = (value or {}).get("error", "unknown error") if isinstance(value, dict) else "unknown error"
            message = (value or {}).get("message", "") if isinstance(value, dict) else str(value)
            if error in _CRASH_ERRORS:
                raise SessionCrashed(f"{error}: {message}")
            raise WebDriverError(error, message, response.status_code)
        return value

    def status(self) -> dict:
        return self._request("GET", "/status")

    def new_session(self, capabilities: dict) -> str:
        value = self._request("POST", "/session", capabilities)
        session_id = value.get("sessionId") if isinstance(value, dict) else None
        if not session_id:
            raise WebDriverError("session not created", json.dumps(value)[:200], 500)
        return session_id

    def delete_session(self, session_id: str) -> None:
        self._request("DELETE", f"/session/{session_id}")

    def navigate(self, session_id: str, url: str, timeout: float | None = None) -> None:
        self._request("POST", f"/session/{session_id}/url", {"url": url}, timeout=timeout)

    def execute(self, session_id: str, script: str, args: list | None = None, timeout: float | None = None):
        payload = {"script": script, "args": args or []}
        return self._request("POST", f"/session/{session_id}/execute/sync", payload, timeout=timeout)

    def screenshot(self, session_id: str) -> bytes:
        encoded = self._request("GET", f"/session/{session_id}/screenshot")
        return base64.b64decode(encoded)

    def get_window_rect(self, session_id: str) -> dict:
        return self._request("GET", f"/session/{session_id}/window/rect")

    def set_window_rect(self, session_id: str, width: int, height: int) -> dict:
        return self._request(
            "POST", f"/session/{session_id}/window/rect", {"width": width, "height": height}
        )

    def perform_actions(self, session_id: str, actions: list[dict]) -> None:
        self._request("POST", f"/session/{session_id}/actions", {"actions": actions})

    def release_actions(self, session_id: str) -> None:
        self._request("DELETE", f"/session/{session_id}/actions")


def pointer_click_sequence(x: float, y: float) -> list[dict]:
    return [
        {
            "type": "pointer",
            "id": "mouse",
            "parameters": {"pointerType": "mouse"},
            "actions": [
                {"type": "pointerMove", "duration": 0, "x": int(x), "y": int(y), "origin": "viewport"},
                {"type": "pointerDown", "button": 0},
                {"type": "pointerUp", "button": 0},
            ],
        }
    ]


def key_sequence(text: str) -> list[dict]:
    actions = []
    for ch in text:
        actions.append({"type": "keyDown", "value": ch})
        actions.append({"type": "keyUp", "value": ch})
    return [{"type": "key", "id": "keyboard", "actions": actions}]


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


class DriverProcess:
    """A locally launched WebDriver server (chromedriver, geckodriver, ...)."""

    def __init__(self, binary: str, port: int | None = None, startup_timeout: float = 15.0):
        self.port = port or _free_port()
        self.url = f"http://127.0.0.1:{self.port}"
        try:
            self.process = subprocess.Popen(
                [binary, f"--port={self.port}"],
                stdout=subprocess.DEVNULL,
                stderr=subprocess.DEVNULL,
            )
        except OSError as exc:
            raise LaunchFailure(f"could not launch driver {binary!r}: {exc}") from exc
        deadline = time.monotonic() + startup_timeout
        probe = WebDriverClient(self.url, timeout=2.0)
        while True:
            try:
                probe.status()
                break
            except (WebDriverError, TimeoutError):
                if self.process.poll() is not None:
                    raise LaunchFailure(f"driver {binary!r} exited during startup")
                if time.monotonic() > deadline:
                    self.close()
                    raise LaunchFailure(f"driver {binary!r} did not become ready")
                time.sleep(0.1)

    def close(self) -> None:
        if self.process.poll() is None:
            self.process.terminate()
            try:
                self.process.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self.process.kill()


@dataclass
class WebDriverRuntime:
    """Where to find the driver and browser; environment variables fill defaults."""

    endpoint: str | None = None
    driver_binary: str | None = None
    browser_binary: str | None = None
    browser_args: tuple[str, ...] = ()

    @classmethod
    def from_env(cls, env: dict | None = None) -> "WebDriverRuntime":
        env = os.environ if env is None else env
        return cls(
            endpoint=env.get("WEBDRIVER_URL") or None,
            driver_binary=env.get("WEBDRIVER_BIN") or None,
            browser_binary=env.get("BROWSER_PATH") or None,
        )

    @property
    def configured(self) -> bool:
        return bool(self.endpoint or self.driver_binary)


def build_capabilities(runtime: WebDriverRuntime, config: SessionConfig) -> dict:
    options: dict = {
        "args": [
            "--headless=new",
            f"--window-size={config.viewport_width},{config.viewport_height}",
            "--disable-gpu",
            "--hide-scrollbars",
            "--force-device-scale-factor=1",
            *runtime.browser_args,
        ]
    }
    if runtime.browser_binary:
        options["binary"] = runtime.browser_binary
    return {"capabilities": {"alwaysMatch": {"goog:chromeOptions": options}}}


class WebDriverBrowser:
    """Owns the driver endpoint and creates one session per sample."""

    def __init__(self, runtime: WebDriverRuntime | None = None):
        self.runtime = runtime or WebDriverRuntime.from_env()
        if not self.runtime.configured:
            raise LaunchFailure(
                "no webdriver endpoint configured (set WEBDRIVER_URL or WEBDRIVER_BIN)"
            )
        self._process: DriverProcess | None = None
        if self.runtime.endpoint:
            self._url = self.runtime.endpoint
        else:
            self._process = DriverProcess(self.runtime.driver_binary)
            self._url = self._process.url

    def open(self, html: str, config: SessionConfig, sample_id: str = "page") -> "WebDriverPageSession":
        client = WebDriverClient(self._url, timeout=config.page_load_timeout + 10)
        try:
            session_id = client.new_session(build_capabilities(self.runtime, config))
        except WebDriverError as exc:
            raise LaunchFailure(f"could not create browser session: {exc}") from exc
        return WebDriverPageSession(client, session_id, html, config, sample_id)

    def close(self) -> None:
        if self._process is not None:
            self._process.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class WebDriverPageSession(PageSession):
    def __init__(
        self,
        client: WebDriverClient,
        session_id: str,
        html: str,
        config: SessionConfig,
        sample_id: str = "page",
    ):
        super().__init__(config, sample_id)
        self.client = client
        self.session_id = session_id
        self._marked = False
        self._html_path = self._materialize(html)
        try:
            self.client.set_window_rect(session_id, config.viewport_width, config.viewport_height)
            self._load()
        except BaseException:
            self.close()
            raise

    def _materialize(self, html: str) -> Path:
        directory = self.config.artifact_dir or Path(tempfile.gettempdir())
        directory = Path(directory) / self.sample_id
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / "page.html"
        path.write_text(html, encoding="utf-8")
        return path

    def _load(self) -> None:
        deadline = time.monotonic() + self.config.page_load_timeout
        url = self._html_path.resolve().as_uri()
        try:
            self.client.navigate(self.session_id, url, timeout=self.config.page_load_timeout + 2)
        except TimeoutError:
            raise LoadTimeout(f"navigation exceeded {self.config.page_load_timeout}s") from None
        while True:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise LoadTimeout(f"page not loaded within {self.config.page_load_timeout}s")
            try:
                state = self.client.execute(
                    self.session_id, _READY_STATE, timeout=max(remaining, 0.2) + 1
                )
            except TimeoutError:
                raise LoadTimeout(f"page not loaded within {self.config.page_load_timeout}s") from None
            if state == "complete":
                return
            time.sleep(0.05)

    def _ensure_unmarked(self) -> None:
        if self._marked:
            self.client.execute(self.session_id, _UNMARK)
            self._marked = False

    def capture_viewport(self) -> Screenshot:
        self._ensure_unmarked()
        return self._grab(ScreenshotKind.VIEWPORT)

    def _grab(self, kind: ScreenshotKind) -> Screenshot:
        try:
            data = self.client.screenshot(self.session_id)
        except (WebDriverError, SessionCrashed, TimeoutError) as exc:
            raise CaptureFailure(f"screenshot failed: {exc}") from exc
        return self._persist(Screenshot.from_png(data, kind))

    def capture_full_page(self) -> Screenshot:
        self._ensure_unmarked()
        try:
            dims = self.client.execute(self.session_id, _SCROLL_DIMS)
            full_height = max(int(dims[1]), self.config.viewport_height)
            rect = self.client.get_window_rect(self.session_id)
            self.client.set_window_rect(self.session_id, self.config.viewport_width, full_height)
            try:
                shot = self._grab(ScreenshotKind.FULL_PAGE)
            finally:
                self.client.set_window_rect(
                    self.session_id, int(rect["width"]), int(rect["height"])
                )
        except (WebDriverError, TimeoutError) as exc:
            raise CaptureFailure(f"full-page capture failed: {exc}") from exc
        return shot

    def mark_elements(self) -> tuple[list[MarkedElement], Screenshot]:
        if not self.config.marker_script:
            raise ScriptInjectionFailure("no page-marker script configured")
        try:
            self.client.execute(self.session_id, self.config.marker_script)
            raw = self.client.execute(self.session_id, _COLLECT_MARKS)
        except WebDriverError as exc:
            raise ScriptInjectionFailure(f"marker script failed: {exc}") from exc
        try:
            elements = parse_marker_result(raw)
        except (ValueError, KeyError) as exc:
            raise ScriptInjectionFailure(f"bad marker payload: {exc}") from exc
        self._marked = True
        self.last_marks = {e.label: e for e in elements}
        shot = self._grab(ScreenshotKind.LABELED_VIEWPORT)
        return elements, shot

    def perform(self, action: Action) -> ActionOutcome:
        if action.kind is ActionKind.FINISH:
            raise ValueError("FINISH is a loop terminator, not a performable action")
        if action.kind in (ActionKind.CLICK, ActionKind.TYPE):
            element = self._require_label(action.label)
            self._ensure_unmarked()
            x, y = element.center
            tag = self.client.execute(self.session_id, _TAG_AT_POINT, [x, y])
            if tag is None:
                raise StaleElement(f"no element at center of label {action.label}")
            self.client.perform_actions(self.session_id, pointer_click_sequence(x, y))
            if action.kind is ActionKind.TYPE:
                self.client.execute(self.session_id, _CLEAR_FOCUSED)
                self.client.perform_actions(
                    self.session_id, key_sequence(action.content + KEY_ENTER)
                )
            self.client.release_actions(self.session_id)
        elif action.kind in ARROW_KEYS:
            self._ensure_unmarked()
            self.client.perform_actions(self.session_id, key_sequence(ARROW_KEYS[action.kind]))
            self.client.release_actions(self.session_id)
        else:  # Wait: sleep the action's own duration, then settle like any action
            self._ensure_unmarked()
            if self.config.action_settle_delay:
                time.sleep(self.config.action_settle_delay)
        if self.config.action_settle_delay:
            time.sleep(self.config.action_settle_delay)
        return ActionOutcome(applied=True, screenshot=self.capture_viewport())

    def network_requests(self) -> list[str]:
        urls = self.client.execute(self.session_id, _RESOURCE_URLS)
        return [str(u) for u in (urls or [])]

    def dom_snapshot(self) -> str:
        return str(self.client.execute(self.session_id, _OUTER_HTML))

    def close(self) -> None:
        try:
            self.client.delete_session(self.session_id)
        except (WebDriverError, SessionCrashed, TimeoutError):
            pass
