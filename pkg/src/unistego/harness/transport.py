"""Chat-completion transports: a live HTTP client and a scripted mock."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import httpx

from .config import ModelProfile
from .errors import OversizePrompt, TransportError
from .prompts import estimate_tokens


@dataclass(frozen=True)
class Cell:
    experiment: str
    scheme: str
    model: str


class Transport(Protocol):
    def complete(self, profile: ModelProfile, prompt: str, cell: Cell | None = None) -> str: ...


def request_body(profile: ModelProfile, prompt: str) -> dict:
    # one user message, no system prompt
    body = {
        "model": profile.model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": profile.temperature,
    }
    if profile.reasoning_effort != "none":
        body["reasoning_effort"] = profile.reasoning_effort
    return body


class HttpTransport:
    def __init__(self, client: httpx.Client | None = None, env=None, timeout: float = 120.0):
        self.client = client or httpx.Client(timeout=timeout)
        self.env = os.environ if env is None else env

    def api_key(self, profile: ModelProfile) -> str:
        key = self.env.get(profile.api_key_env)
        if not key:
            raise TransportError(f"{profile.name}: environment variable {profile.api_key_env} is not set")
        return key

    def complete(self, profile, prompt, cell=None) -> str:
        if not profile.endpoint:
            raise TransportError(f"{profile.name}: no endpoint configured")
        headers = {"Authorization": f"Bearer {self.api_key(profile)}"}
        try:
            resp = self.client.post(profile.endpoint, json=request_body(profile, prompt), headers=headers)
        except httpx.HTTPError as exc:
            raise TransportError(f"{profile.name}: {exc}") from None
        if resp.status_code >= 400:
            raise TransportError(f"{profile.name}: HTTP {resp.status_code}")
        try:
            return resp.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError):
            raise TransportError(f"{profile.name}: unexpected response shape") from None


class MockTransport:
    """Replays scripted answers keyed by (experiment, scheme, model)."""

    def __init__(self, responses: dict[tuple[str, str, str], str]):
        self.responses = responses

    @classmethod
    def from_file(cls, path) -> "MockTransport":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise TransportError(f"cannot load fixtures {path}: {exc}") from None
        responses = {}
        for experiment, by_model in data.items():
            if experiment.startswith("_"):
                continue
            for model, by_scheme in by_model.items():
                for scheme, text in by_scheme.items():
                    responses[(experiment, scheme, model)] = text
        return cls(responses)

    def complete(self, profile, prompt, cell=None) -> str:
        if cell is None:
            raise TransportError("mock transport needs the cell key")
        try:
            return self.responses[(cell.experiment, cell.scheme, cell.model)]
        except KeyError:
            raise TransportError(f"no scripted response for {cell}") from None


@dataclass(frozen=True)
class SendResult:
    text: str
    latency: float


def send(profile: ModelProfile, prompt: str, transport: Transport, cell: Cell | None = None) -> SendResult:
    if profile.max_input_tokens is not None:
        n = estimate_tokens(prompt)
        if n > profile.max_input_tokens:
            raise OversizePrompt(f"{profile.name}: prompt of ~{n} tokens exceeds {profile.max_input_tokens}")
    start = time.perf_counter()
    text = transport.complete(profile, prompt, cell)
    return SendResult(text, time.perf_counter() - start)
