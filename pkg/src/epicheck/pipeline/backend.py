"""LLM backends: live chat-completion over HTTP, or replay from a fixture file."""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional

import httpx

from ..errors import BackendUnavailable, ConfigError, FixtureMiss, MalformedRecord, MissingApiKey

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BackendConfig:
    mode: str = "replay"
    endpoint: Optional[str] = None
    model: Optional[str] = None
    temperature: float = 0.0
    api_key_env: str = "OPENAI_API_KEY"
    max_retries: int = 3
    backoff: float = 1.0
    timeout: float = 60.0
    fixture: Optional[str] = None

    def validate(self) -> "BackendConfig":
        if self.mode == "live":
            if not self.endpoint or not self.model or not self.api_key_env:
                raise ConfigError("live backend needs endpoint, model and api_key_env")
        elif self.mode == "replay":
            if not self.fixture:
                raise ConfigError("replay backend needs a fixture path")
        else:
            raise ConfigError(f"unknown backend mode {self.mode!r}")
        if self.max_retries < 0:
            raise ConfigError("max_retries must be >= 0")
        return self

    @classmethod
    def from_dict(cls, d: dict) -> "BackendConfig":
        try:
            return cls(**d).validate()
        except TypeError as e:
            raise ConfigError(f"bad backend config: {e}") from None

    def to_dict(self) -> dict:
        return asdict(self)


def load_fixture(path) -> Dict[str, str]:
    responses = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
                responses[str(obj["id"])] = obj["response"]
            except (json.JSONDecodeError, KeyError, TypeError):
                raise MalformedRecord(lineno, "fixture lines need 'id' and 'response'") from None
    return responses


class ReplayBackend:
    def __init__(self, responses: Dict[str, str]):
        self.responses = responses

    @classmethod
    def from_config(cls, config: BackendConfig) -> "ReplayBackend":
        return cls(load_fixture(config.fixture))

    def complete(self, record_id: str, messages: List[dict]) -> str:
        try:
            return self.responses[record_id]
        except KeyError:
            raise FixtureMiss(record_id) from None


class LiveBackend:
    """OpenAI-style ``/chat/completions`` client with bounded retries.

    ``endpoint`` is the full URL to POST to. The API key is read once from
    the configured environment variable and never logged.
    """

    def __init__(
        self,
        config: BackendConfig,
        client: Optional[httpx.Client] = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        key = os.environ.get(config.api_key_env)
        if not key:
            raise MissingApiKey(config.api_key_env)
        self.config = config
        self._headers = {"Authorization": f"Bearer {key}"}
        self._client = client or httpx.Client(timeout=config.timeout)
        self._sleep = sleep

    def complete(self, record_id: str, messages: List[dict]) -> str:
        cfg = self.config
        payload = {"model": cfg.model, "messages": messages, "temperature": cfg.temperature}
        last = "no attempt made"
        for attempt in range(cfg.max_retries + 1):
            if attempt:
                self._sleep(cfg.backoff * 2 ** (attempt - 1))
            try:
                resp = self._client.post(cfg.endpoint, json=payload, headers=self._headers)
            except httpx.HTTPError as e:
                last = f"transport error: {type(e).__name__}"
            else:
                if 200 <= resp.status_code < 300:
                    try:
                        content = resp.json()["choices"][0]["message"]["content"]
                    except (ValueError, KeyError, IndexError, TypeError):
                        last = "malformed response body"
                    else:
                        return content if content is not None else ""
                else:
                    last = f"HTTP {resp.status_code}"
            log.warning("record %s: attempt %d failed (%s)", record_id, attempt + 1, last)
        raise BackendUnavailable(f"{cfg.max_retries + 1} attempts failed, last: {last}")


def make_backend(config: BackendConfig, client: Optional[httpx.Client] = None):
    config.validate()
    if config.mode == "replay":
        return ReplayBackend.from_config(config)
    return LiveBackend(config, client=client)


def query_backend(backend, messages: List[dict], record_id: str) -> str:
    return backend.complete(record_id, messages)
