"""Experiment configuration: model profiles and run settings, loaded from JSON.

API keys never live in the file; each profile names the environment
variable that holds its key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..core import CoverText, SchemeId, reference_cover
from ..whitespace import DEFAULT_WRAP_WIDTH
from .errors import ConfigError

REASONING_EFFORTS = ("low", "medium", "high", "none")


@dataclass(frozen=True)
class ModelProfile:
    name: str
    model: str
    endpoint: str = ""
    temperature: float = 1.0
    reasoning_effort: str = "medium"
    max_input_tokens: int | None = None
    api_key_env: str = "OPENAI_API_KEY"

    def __post_init__(self):
        if not self.name:
            raise ConfigError("model profile needs a name")
        if self.temperature < 0:
            raise ConfigError(f"{self.name}: temperature must be >= 0")
        if self.reasoning_effort not in REASONING_EFFORTS:
            raise ConfigError(f"{self.name}: reasoning_effort must be one of {REASONING_EFFORTS}")
        if self.max_input_tokens is not None and self.max_input_tokens <= 0:
            raise ConfigError(f"{self.name}: max_input_tokens must be positive")


@dataclass
class ExperimentConfig:
    models: list[ModelProfile]
    schemes: list[SchemeId] = field(default_factory=lambda: list(SchemeId))
    cover: CoverText = field(default_factory=reference_cover)
    payload: str = "Secret Message"
    scheme_names: dict[SchemeId, str] = field(default_factory=dict)
    source_files: dict[SchemeId, Path] = field(default_factory=dict)
    parallelism: int = 1
    timestamp: int = 0
    wrap_width: int = DEFAULT_WRAP_WIDTH

    def __post_init__(self):
        if not self.payload:
            raise ConfigError("payload must be non-empty")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")
        for scheme, name in self.scheme_names.items():
            if not name.strip():
                raise ConfigError(f"empty prompt name for {scheme}")
        names = [m.name for m in self.models]
        if len(set(names)) != len(names):
            raise ConfigError("model names must be unique")


def _scheme(value) -> SchemeId:
    try:
        return SchemeId(value)
    except ValueError:
        raise ConfigError(f"unknown scheme {value!r}") from None


def parse_config(data: dict, base_dir: Path = Path(".")) -> ExperimentConfig:
    try:
        models = [ModelProfile(**m) for m in data.get("models", [])]
    except TypeError as exc:
        raise ConfigError(f"bad model profile: {exc}") from None
    kwargs = {"models": models}
    if "schemes" in data:
        kwargs["schemes"] = [_scheme(s) for s in data["schemes"]]
    if "cover_file" in data:
        path = base_dir / data["cover_file"]
        try:
            kwargs["cover"] = CoverText(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read cover file: {exc}") from None
    for key in ("payload", "parallelism", "timestamp", "wrap_width"):
        if key in data:
            kwargs[key] = data[key]
    kwargs["scheme_names"] = {_scheme(k): v for k, v in data.get("scheme_names", {}).items()}
    kwargs["source_files"] = {_scheme(k): base_dir / v for k, v in data.get("source_files", {}).items()}
    return ExperimentConfig(**kwargs)


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return parse_config(data, path.parent)
