"""In-process WebDriver server for protocol-level tests.

Implements the endpoint subset the wire client uses, backed by the same
deterministic page model as the stub backend, so the real HTTP client can
be exercised end to end without a browser binary.
"""

from __future__ import annotations

import base64
import json
import re
import threading
import time
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import unquote, urlparse

from aesreward.browser.stub import (
    declared_page_height,
    enumerate_interactables,
    has_script,
    render_page_png,
)

_SESSION_ROUTE = re.compile(r"^/session/([^/]+)(/.*)?$")


class _State:
    def __init__(self):
        self.html = ""
        self.state = 0
        self.marked = False
        self.window = {"x": 0, "y": 0, "width": 800, "height": 600}


class MockWebDriverServer:
    def __init__(self):
        self.sessions: dict[str, _State] = {}
        self.lock = threading.Lock()
        self.requests: list[tuple[str, str, dict | None]] = []
        self.last_actions: list[dict] = []
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def _reply(self, value, status=200):
                body = json.dumps({"value": value}).encode()
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def _payload(self):
                length = int(self.headers.get("Content-Length") or 0)
                if not length:
                    return None
                return json.loads(self.rfile.read(length))

            def do_GET(self):
                outer._record("GET", self.path, None)
                if self.path == "/status":
                    return self._reply({"ready": True, "message": "mock driver"})
                match = _SESSION_ROUTE.match(self.path)
                if not match:
                    return self._reply({"error": "unknown command", "message": self.path}, 404)
                session = outer._session(match.group(1))
                if session is None:
                    return self._reply({"error": "invalid session id", "message": ""}, 404)
                sub = match.group(2) or ""
                if sub == "/screenshot":
                    png = render_page_png(
                        session.html,
                        session.state,
                        session.window["width"],
                        session.window["height"],
                        session.marked,
                    )
                    return self._reply(base64.b64encode(png).decode("ascii"))
                if sub == "/window/rect":
                    return self._reply(dict(session.window))
                return self._reply({"error": "unknown command", "message": sub}, 404)

            def do_POST(self):
                payload = self._payload()
                outer._record("POST", self.path, payload)
                if self.path == "/session":
                    sid = str(uuid.uuid4())
                    with outer.lock:
                        outer.sessions[sid] = _State()
                    return self._reply({"sessionId": sid, "capabilities": {}})
                match = _SESSION_ROUTE.match(self.path)
                session = outer._session(match.group(1)) if match else None
                if session is None:
                    return self._reply({"error": "invalid session id", "message": ""}, 404)
                sub = match.group(2) or ""
                if sub == "/url":
                    return self._navigate(session, payload)
                if sub == "/execute/sync":
                    return self._reply(outer._execute(session, payload))
                if sub == "/window/rect":
                    session.window["width"] = int(payload["width"])
                    session.window["height"] = int(payload["height"])
                    return self._reply(dict(session.window))
                if sub == "/actions":
                    outer.last_actions = payload["actions"]
                    if has_script(session.html):
                        session.state += 1
                    return self._reply(None)
                return self._reply({"error": "unknown command", "message": sub}, 404)

            def _navigate(self, session, payload):
                url = payload["url"]
                parsed = urlparse(url)
                if parsed.scheme != "file":
                    return self._reply({"error": "invalid argument", "message": url}, 400)
                with open(unquote(parsed.path), encoding="utf-8") as fh:
                    html = fh.read()
                if "stub:load-forever" in html:
                    time.sleep(6)  # longer than any test's load timeout
                session.html = html
                session.state = 0
                session.marked = False
                return self._reply(None)

            def do_DELETE(self):
                outer._record("DELETE", self.path, None)
                match = _SESSION_ROUTE.match(self.path)
                if not match:
                    return self._reply({"error": "unknown command", "message": ""}, 404)
                sid, sub = match.group(1), match.group(2) or ""
                if sub == "/actions":
                    return self._reply(None)
                with outer.lock:
                    outer.sessions.pop(sid, None)
                return self._reply(None)

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.server.daemon_threads = True
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)

    def _record(self, method, path, payload):
        with self.lock:
            self.requests.append((method, path, payload))

    def _session(self, sid):
        with self.lock:
            return self.sessions.get(sid)

    def _execute(self, session: _State, payload):
        script = payload.get("script", "")
        args = payload.get("args", [])
        if "document.readyState" in script:
            return "complete"
        if "scrollWidth" in script:
            height = declared_page_height(session.html, session.window["height"])
            return [session.window["width"], height]
        if "collectAndMark()" in script:
            session.marked = True
            return json.dumps({"elements": enumerate_interactables(session.html)})
        if "unmark()" in script:
            session.marked = False
            return None
        if "elementFromPoint" in script:
            x, y = float(args[0]), float(args[1])
            for entry in enumerate_interactables(session.html):
                ex, ey, ew, eh = entry["bbox"]
                if ex <= x <= ex + ew and ey <= y <= ey + eh:
                    return entry["tag"].upper()
            return None
        if "activeElement" in script:
            return None
        if "outerHTML" in script:
            overlay = '<div id="page-marker-overlay"></div>' if session.marked else ""
            return session.html + overlay
        if "getEntriesByType" in script:
            return []
        return None

    @property
    def url(self) -> str:
        host, port = self.server.server_address
        return f"http://{host}:{port}"

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()
