"""Run configuration: defaults, config file, environment, and flag overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

from .browser.session import SessionConfig
from .browser.stub import StubPageSession
from .browser.webdriver import WebDriverBrowser, WebDriverRuntime
from .judge.cassette import CassetteStore
from .judge.client import JudgeClient, JudgeEndpoint
from .pipeline import EvaluationContext
from .reward import Weights

# config-file keys / flag names -> environment variable
_ENV_KEYS = {
    "judge_api_base": "JUDGE_API_BASE",
    "judge_api_key": "JUDGE_API_KEY",
    "judge_model": "JUDGE_MODEL",
    "browser_path": "BROWSER_PATH",
    "webdriver_url": "WEBDRIVER_URL",
    "webdriver_bin": "WEBDRIVER_BIN",
    "marker_script_path": "PAGE_MARKER_JS",
}

_INT_KEYS = {"n_budget", "max_iterations", "parallelism", "viewport_width", "viewport_height"}
_FLOAT_KEYS = {"page_load_timeout", "action_settle_delay", "rate_limit"}


@dataclass
class RunConfig:
    w_exec: float = 0.1
    w_static: float = 0.8
    w_interact: float = 0.1
    n_budget: int = 3
    max_iterations: int = 15
    parallelism: int = 1
    replay_dir: str | None = None
    record_dir: str | None = None
    judge_api_base: str = ""
    judge_api_key: str = ""
    judge_model: str = "judge-default"
    browser_backend: str = "auto"  # auto | stub | webdriver
    browser_path: str = ""
    webdriver_url: str = ""
    webdriver_bin: str = ""
    marker_script_path: str = ""
    artifact_dir: str | None = None
    viewport_width: int = 1280
    viewport_height: int = 800
    page_load_timeout: float = 10.0
    action_settle_delay: float = 1.0
    rate_limit: float = 0.0  # judge calls per second; 0 disables the limiter

    def __post_init__(self):
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        if self.n_budget < 0:
            raise ValueError("n_budget must be >= 0")
        if self.max_iterations < self.n_budget + 2:
            raise ValueError("max_iterations must be at least n_budget + 2")
        if self.replay_dir and self.record_dir:
            raise ValueError("replay and record modes are mutually exclusive")
        if self.browser_backend not in ("auto", "stub", "webdriver"):
            raise ValueError(f"unknown browser backend: {self.browser_backend!r}")

    @property
    def weights(self) -> Weights:
        return Weights(self.w_exec, self.w_static, self.w_interact)

    @property
    def judge_mode(self) -> str:
        if self.replay_dir:
            return "replay"
        if self.record_dir:
            return "record"
        return "live"


def parse_config_file(path: str | Path) -> dict:
    """``key = value`` lines; blank lines and ``#`` comments ignored."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip()
    return values


def _coerce(key: str, value):
    if value is None or not isinstance(value, str):
        return value
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS or key.startswith("w_"):
        return float(value)
    return value


def load_config(
    file: str | Path | None = None,
    env: dict | None = None,
    overrides: dict | None = None,
) -> RunConfig:
    """Build a RunConfig with precedence: overrides > env > file > defaults."""
    env = os.environ if env is None else env
    known = {f.name for f in fields(RunConfig)}
    merged: dict = {}
    if file is not None:
        for key, value in parse_config_file(file).items():
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            merged[key] = _coerce(key, value)
    for key, env_name in _ENV_KEYS.items():
        if env.get(env_name):
            merged[key] = env[env_name]
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in known:
            raise ValueError(f"unknown config override {key!r}")
        merged[key] = _coerce(key, value)
    return RunConfig(**merged)


def resolve_backend(config: RunConfig) -> str:
    if config.browser_backend != "auto":
        return config.browser_backend
    return "webdriver" if (config.webdriver_url or config.webdriver_bin) else "stub"


def build_judge(config: RunConfig, transport=None) -> JudgeClient:
    cassettes = None
    if config.replay_dir:
        cassettes = CassetteStore(config.replay_dir)
    elif config.record_dir:
        cassettes = CassetteStore(config.record_dir)
    endpoint = JudgeEndpoint(
        base_url=config.judge_api_base,
        api_key=config.judge_api_key,
        model=config.judge_model,
    )
    return JudgeClient(
        endpoint=endpoint,
        transport=transport,
        cassettes=cassettes,
        mode=config.judge_mode,
        rate_limit=config.rate_limit or None,
    )


def build_session_config(config: RunConfig) -> SessionConfig:
    marker_script = None
    if config.marker_script_path:
        marker_script = Path(config.marker_script_path).read_text(encoding="utf-8")
    return SessionConfig(
        viewport_width=config.viewport_width,
        viewport_height=config.viewport_height,
        page_load_timeout=config.page_load_timeout,
        action_settle_delay=config.action_settle_delay,
        artifact_dir=Path(config.artifact_dir) if config.artifact_dir else None,
        marker_script=marker_script,
    )


def build_context(config: RunConfig, judge_transport=None) -> EvaluationContext:
    """Wire a judge client and a session factory per the run configuration."""
    judge = build_judge(config, transport=judge_transport)
    session_config = build_session_config(config)
    backend = resolve_backend(config)
    if backend == "webdriver":
        runtime = WebDriverRuntime(
            endpoint=config.webdriver_url or None,
            driver_binary=config.webdriver_bin or None,
            browser_binary=config.browser_path or None,
        )
        browser = WebDriverBrowser(runtime)

        def session_factory(html: str, sample_id: str):
            return browser.open(html, session_config, sample_id)

    else:

        def session_factory(html: str, sample_id: str):
            return StubPageSession(html, session_config, sample_id)

    return EvaluationContext(
        judge=judge,
        session_factory=session_factory,
        weights=config.weights,
        n_budget=config.n_budget,
        max_iterations=config.max_iterations,
        artifact_dir=Path(config.artifact_dir) if config.artifact_dir else None,
    )
