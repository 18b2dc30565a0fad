"""Multimodal judge client with live, record, and replay transports."""

from __future__ import annotations

import base64
import os
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Protocol

import requests

from ..actions import UnknownAction
from . import prompts
from .cassette import CassetteStore, image_hash, request_key
from .replies import (
    AblationScore,
    AgentReply,
    JudgeReplyError,
    PairwiseVerdict,
    PointwiseScore,
    parse_ablation,
    parse_agent_reply,
    parse_pairwise,
    parse_pointwise,
)


class JudgeUnreachable(RuntimeError):
    """The judge endpoint could not be reached or returned a server error."""


@dataclass
class JudgeEndpoint:
    """Judge endpoint settings; environment variables fill unset fields."""

    base_url: str = ""
    api_key: str = ""
    model: str = "judge-default"
    temperature: float = 0.0
    timeout: float = 120.0

    @classmethod
    def from_env(cls, env: dict | None = None) -> "JudgeEndpoint":
        env = os.environ if env is None else env
        return cls(
            base_url=env.get("JUDGE_API_BASE", ""),
            api_key=env.get("JUDGE_API_KEY", ""),
            model=env.get("JUDGE_MODEL", "judge-default"),
        )


class Transport(Protocol):
    def __call__(self, messages: list[dict], model: str, temperature: float) -> str: ...


class HttpTransport:
    """Chat-completions style HTTP JSON transport."""

    def __init__(self, endpoint: JudgeEndpoint, session: requests.Session | None = None):
        if not endpoint.base_url:
            raise JudgeUnreachable("no judge endpoint configured (set JUDGE_API_BASE)")
        self.endpoint = endpoint
        self.session = session or requests.Session()

    def __call__(self, messages: list[dict], model: str, temperature: float) -> str:
        url = self.endpoint.base_url.rstrip("/") + "/chat/completions"
        headers = {"Content-Type": "application/json"}
        if self.endpoint.api_key:
            headers["Authorization"] = f"Bearer {self.endpoint.api_key}"
        try:
            response = self.session.post(
                url,
                json={"model": model, "messages": messages, "temperature": temperature},
                headers=headers,
                timeout=self.endpoint.timeout,
            )
        except requests.RequestException as exc:
            raise JudgeUnreachable(f"judge endpoint unreachable: {exc}") from exc
        if response.status_code >= 400:
            raise JudgeUnreachable(f"judge returned HTTP {response.status_code}")
        payload = response.json()
        try:
            return payload["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError):
            raise JudgeUnreachable("judge response missing choices[0].message.content") from None


class TokenBucket:
    """Serializes call bursts; ``rate`` is calls per second."""

    def __init__(self, rate: float, burst: int = 4):
        self.rate = rate
        self.burst = burst
        self._tokens = float(burst)
        self._stamp = time.monotonic()
        self._lock = threading.Lock()

    def acquire(self):
        while True:
            with self._lock:
                now = time.monotonic()
                self._tokens = min(self.burst, self._tokens + (now - self._stamp) * self.rate)
                self._stamp = now
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return
                wait = (1.0 - self._tokens) / self.rate
            time.sleep(wait)


def _image_part(png_bytes: bytes) -> dict:
    encoded = base64.b64encode(png_bytes).decode("ascii")
    return {"type": "image_url", "image_url": {"url": f"data:image/png;base64,{encoded}"}}


def _text_part(text: str) -> dict:
    return {"type": "text", "text": text}


class JudgeClient:
    """Renders prompts, calls the judge, and validates structured replies.

    Modes: ``live`` talks to the transport, ``record`` additionally writes
    cassettes, and ``replay`` reads cassettes only and never touches the
    network.
    """

    def __init__(
        self,
        endpoint: JudgeEndpoint | None = None,
        transport: Transport | None = None,
        cassettes: CassetteStore | None = None,
        mode: str = "live",
        retry_limit: int = 3,
        backoff_base: float = 0.5,
        rate_limit: float | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        if mode not in ("live", "record", "replay"):
            raise ValueError(f"unknown judge mode: {mode}")
        if mode in ("record", "replay") and cassettes is None:
            raise ValueError(f"{mode} mode requires a cassette store")
        self.endpoint = endpoint or JudgeEndpoint.from_env()
        self.mode = mode
        self.cassettes = cassettes
        self.retry_limit = retry_limit
        self.backoff_base = backoff_base
        self._sleep = sleep
        self._transport = transport
        self._bucket = TokenBucket(rate_limit) if rate_limit else None
        self.total_calls = 0
        self.network_calls = 0
        self._lock = threading.Lock()

    def _resolve_transport(self) -> Transport:
        if self._transport is None:
            self._transport = HttpTransport(self.endpoint)
        return self._transport

    def _complete(
        self,
        template_id: str,
        substitutions: dict[str, str],
        images: list[bytes],
        messages: list[dict],
    ) -> str:
        hashes = [image_hash(png) for png in images]
        key = request_key(template_id, substitutions, hashes)
        with self._lock:
            self.total_calls += 1
        if self.mode == "replay":
            assert self.cassettes is not None
            return self.cassettes.load(key)
        if self._bucket is not None:
            self._bucket.acquire()
        with self._lock:
            self.network_calls += 1
        reply = self._resolve_transport()(messages, self.endpoint.model, self.endpoint.temperature)
        if self.mode == "record":
            assert self.cassettes is not None
            self.cassettes.save(key, reply, template_id, substitutions, hashes)
        return reply

    def _call_with_retries(self, parse, template_id, substitutions, images, messages):
        last_error: Exception | None = None
        for attempt in range(self.retry_limit):
            reply = self._complete(template_id, substitutions, images, messages)
            try:
                return parse(reply)
            except (JudgeReplyError, UnknownAction) as exc:
                last_error = exc
                if self.mode == "replay":
                    break  # a recorded reply never changes; retrying is pointless
                if attempt + 1 < self.retry_limit and self.backoff_base > 0:
                    self._sleep(self.backoff_base * (2**attempt))
        assert last_error is not None
        raise last_error

    def score_pointwise(self, topic: str, instruction: str, screenshot) -> PointwiseScore:
        rendered = prompts.render("static-pointwise", topic=topic, user_instruction=instruction)
        png = screenshot.image_bytes
        messages = [{"role": "user", "content": [_text_part(rendered), _image_part(png)]}]
        return self._call_with_retries(
            parse_pointwise,
            "static-pointwise",
            {"topic": topic, "user_instruction": instruction},
            [png],
            messages,
        )

    def compare_pairwise(self, topic: str, instruction: str, screenshot_a, screenshot_b) -> PairwiseVerdict:
        rendered = prompts.render("pairwise-comparison", topic=topic, user_instruction=instruction)
        png_a, png_b = screenshot_a.image_bytes, screenshot_b.image_bytes
        messages = [
            {
                "role": "user",
                "content": [_text_part(rendered), _image_part(png_a), _image_part(png_b)],
            }
        ]
        return self._call_with_retries(
            parse_pairwise,
            "pairwise-comparison",
            {"topic": topic, "user_instruction": instruction},
            [png_a, png_b],
            messages,
        )

    def score_text_ablation(self, topic: str, instruction: str, html: str) -> AblationScore:
        rendered = prompts.render(
            "text-ablation", topic=topic, user_instruction=instruction, html=html
        )
        messages = [{"role": "user", "content": [_text_part(rendered)]}]
        return self._call_with_retries(
            parse_ablation,
            "text-ablation",
            {"topic": topic, "user_instruction": instruction, "html": html},
            [],
            messages,
        )

    def next_agent_step(
        self,
        history: list[dict],
        screenshot,
        *,
        planning: bool,
    ) -> AgentReply:
        """One agent turn: send the text history plus the latest labeled screenshot.

        ``history`` must begin with the interactive system prompt; only the
        newest observation carries an image.
        """
        png = screenshot.image_bytes
        messages = list(history)
        messages.append(
            {
                "role": "user",
                "content": [
                    _text_part("Observation: the labeled screenshot is attached."),
                    _image_part(png),
                ],
            }
        )
        substitutions = {
            "history": _history_fingerprint(messages),
            "stage": "planning" if planning else "interaction",
        }
        return self._call_with_retries(
            lambda reply: parse_agent_reply(reply, planning=planning),
            "interactive-step",
            substitutions,
            [png],
            messages,
        )


def _history_fingerprint(messages: list[dict]) -> str:
    """Canonical text rendering of a conversation, ignoring attached images."""
    parts = []
    for message in messages:
        content = message.get("content", "")
        if isinstance(content, str):
            texts = [content]
        else:
            texts = [part.get("text", "") for part in content if part.get("type") == "text"]
        parts.append(message.get("role", "") + ":" + "\n".join(texts))
    return "\x1e".join(parts)
