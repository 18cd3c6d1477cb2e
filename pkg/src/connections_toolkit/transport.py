"""Chat-completion transports: live HTTP, replay-from-fixture, scripted.

All transports implement `send(messages, params) -> assistant text`. The
live transport speaks the widely adopted chat-completions POST schema, so
any compatible endpoint works; credentials come from an environment
variable, never from flags or files. Wrapping any transport in
CaptureTransport records the full request/response pairs into a session
fixture that ReplayTransport can later serve bit-for-bit without network.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol, Sequence

import requests

from .errors import ReplayMismatchError, TransportError

CAPTURE_VERSION = 1


@dataclass(frozen=True)
class ChatMessage:
    role: str  # "system" | "user" | "assistant"
    content: str

    def __post_init__(self):
        if self.role not in ("system", "user", "assistant"):
            raise TransportError(f"unknown chat role {self.role!r}")
        if not self.content:
            raise TransportError("chat message content must be non-empty")

    def to_dict(self) -> dict:
        return {"role": self.role, "content": self.content}


def build_request(messages: Sequence[ChatMessage], params) -> dict:
    """The chat-completions request body for a conversation state."""
    return {
        "model": params.model_name,
        "messages": [m.to_dict() for m in messages],
        "temperature": params.temperature,
        "seed": params.sampling_seed,
    }


class ChatTransport(Protocol):
    def send(self, messages: Sequence[ChatMessage], params) -> str: ...


class ScriptedTransport:
    """Returns pre-baked replies in order; running out is a transport error."""

    def __init__(self, replies: Sequence[str]):
        self.replies = list(replies)
        self.sent_requests: list[dict] = []

    def send(self, messages: Sequence[ChatMessage], params) -> str:
        self.sent_requests.append(build_request(messages, params))
        if not self.replies:
            raise TransportError("scripted transport has no replies left")
        return self.replies.pop(0)


class ReplayTransport:
    """Serves a recorded session. Each incoming request must equal the
    recorded one, so a replayed run is the recorded run, byte for byte."""

    def __init__(self, session: dict | str | Path, strict: bool = True):
        if not isinstance(session, dict):
            session = json.loads(Path(session).read_text(encoding="utf-8"))
        if session.get("version") != CAPTURE_VERSION:
            raise TransportError(
                f"unsupported capture version {session.get('version')!r}"
            )
        self.exchanges = session["exchanges"]
        self.strict = strict
        self.cursor = 0

    def send(self, messages: Sequence[ChatMessage], params) -> str:
        if self.cursor >= len(self.exchanges):
            raise TransportError("replay session exhausted")
        exchange = self.exchanges[self.cursor]
        self.cursor += 1
        request = build_request(messages, params)
        if self.strict and request != exchange["request"]:
            raise ReplayMismatchError(
                f"request {self.cursor} diverged from the recorded session"
            )
        return _assistant_text(exchange["response"])


def _assistant_text(response: dict) -> str:
    try:
        content = response["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError) as exc:
        raise TransportError(f"malformed chat response: {exc}") from exc
    if not isinstance(content, str) or not content:
        raise TransportError("chat response has no assistant text")
    return content


class CaptureTransport:
    """Wraps another transport and records every exchange."""

    def __init__(self, inner: ChatTransport):
        self.inner = inner
        self.exchanges: list[dict] = []

    def send(self, messages: Sequence[ChatMessage], params) -> str:
        request = build_request(messages, params)
        text = self.inner.send(messages, params)
        self.exchanges.append(
            {"request": request, "response": _wrap_as_response(text, params)}
        )
        return text

    def session(self) -> dict:
        return {"version": CAPTURE_VERSION, "exchanges": self.exchanges}

    def save(self, path: Path | str) -> None:
        Path(path).write_text(
            json.dumps(self.session(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )


def _wrap_as_response(text: str, params) -> dict:
    return {
        "object": "chat.completion",
        "model": params.model_name,
        "choices": [
            {
                "index": 0,
                "message": {"role": "assistant", "content": text},
                "finish_reason": "stop",
            }
        ],
    }


class _RateLimiter:
    """Caps in-flight requests and enforces a minimum interval between them."""

    def __init__(self, max_concurrency: int, min_interval: float):
        self._slots = threading.Semaphore(max_concurrency)
        self._interval = min_interval
        self._lock = threading.Lock()
        self._next_allowed = 0.0

    def __enter__(self):
        self._slots.acquire()
        if self._interval > 0:
            with self._lock:
                now = time.monotonic()
                wait = self._next_allowed - now
                self._next_allowed = max(now, self._next_allowed) + self._interval
            if wait > 0:
                time.sleep(wait)
        return self

    def __exit__(self, *exc):
        self._slots.release()
        return False


_RETRIABLE_STATUS = {429, 500, 502, 503, 504}


@dataclass
class HttpTransport:
    """Live chat-completions client with bounded retries on transient I/O.

    Only transport-level failures are retried; whatever the model says is
    the experiment's subject and is never re-requested.
    """

    base_url: str = "https://api.openai.com/v1"
    api_key_env: str = "OPENAI_API_KEY"
    timeout: float = 60.0
    max_attempts: int = 3
    backoff: float = 1.0  # doubles per retry
    max_concurrency: int = 4
    min_interval: float = 0.0
    session: requests.Session = field(default_factory=requests.Session)

    def __post_init__(self):
        self._limiter = _RateLimiter(self.max_concurrency, self.min_interval)

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def send(self, messages: Sequence[ChatMessage], params) -> str:
        request = build_request(messages, params)
        url = self.base_url.rstrip("/") + "/chat/completions"
        last_error: Exception | None = None
        for attempt in range(self.max_attempts):
            if attempt:
                time.sleep(self.backoff * (2 ** (attempt - 1)))
            try:
                with self._limiter:
                    resp = self.session.post(
                        url, json=request, headers=self._headers(), timeout=self.timeout
                    )
            except requests.RequestException as exc:
                last_error = exc
                continue
            if resp.status_code in _RETRIABLE_STATUS:
                last_error = TransportError(
                    f"HTTP {resp.status_code} from {url}: {resp.text[:200]}"
                )
                continue
            if resp.status_code != 200:
                raise TransportError(
                    f"HTTP {resp.status_code} from {url}: {resp.text[:200]}"
                )
            try:
                return _assistant_text(resp.json())
            except ValueError as exc:
                raise TransportError(f"non-JSON chat response: {exc}") from exc
        raise TransportError(
            f"giving up after {self.max_attempts} attempts: {last_error}"
        )
