"""LLM probe harness: prompts, transports, classifier, runner and reports."""

from .classify import Experiment, classify_response
from .config import ExperimentConfig, ModelProfile, load_config
from .errors import ConfigError, EmptySource, HarnessError, MixedExperiments, OversizePrompt, TransportError
from .prompts import build_detect_prompt, build_extract_prompt, build_extract_with_code_prompt
from .runner import AccuracyMatrices, ProbeRecord, aggregate, load_records, run_experiment, write_matrices
from .transport import HttpTransport, MockTransport, send

__all__ = [
    "AccuracyMatrices",
    "ConfigError",
    "EmptySource",
    "Experiment",
    "ExperimentConfig",
    "HarnessError",
    "HttpTransport",
    "MixedExperiments",
    "MockTransport",
    "ModelProfile",
    "OversizePrompt",
    "ProbeRecord",
    "TransportError",
    "aggregate",
    "build_detect_prompt",
    "build_extract_prompt",
    "build_extract_with_code_prompt",
    "classify_response",
    "load_config",
    "load_records",
    "run_experiment",
    "send",
]
