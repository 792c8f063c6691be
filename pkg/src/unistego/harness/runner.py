"""Run the three probe experiments, persist records, aggregate label counts."""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ..core import SchemeId
from ..errors import WatermarkError
from ..schemes import EmbedOptions, embed
from .classify import Experiment, classify_response
from .config import ExperimentConfig, ModelProfile
from .errors import HarnessError, MixedExperiments
from .prompts import (
    PROMPT_NAMES,
    build_detect_prompt,
    build_extract_prompt,
    build_extract_with_code_prompt,
    default_source,
)
from .transport import Cell, Transport, send

log = logging.getLogger(__name__)

ORIGINAL = "original"
RECORDS_FILE = "records.jsonl"
CSV_HEADER = ("model", "scheme", "label", "count")


@dataclass
class ProbeRecord:
    experiment: str
    scheme: str
    model: str
    prompt: str
    response: str
    classification: str
    timestamp: str
    latency: float
    target: str = ""
    watermarked: bool = True
    error: str = ""

    def reclassify(self) -> str:
        if self.classification == "skipped":
            return "skipped"
        return classify_response(self.experiment, self.response, self.target, watermarked=self.watermarked)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ProbeRecord":
        return cls(**data)

    def to_json(self) -> str:
        # ensure_ascii keeps invisible payload characters reviewable in the store
        return json.dumps(self.to_dict(), ensure_ascii=True)


@dataclass(frozen=True)
class _Job:
    profile: ModelProfile
    scheme: str
    prompt: str
    watermarked: bool
    error: str = ""


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _stego_texts(config: ExperimentConfig) -> dict[SchemeId, str | Exception]:
    opts = EmbedOptions(timestamp=config.timestamp, wrap_width=config.wrap_width)
    out = {}
    for scheme in config.schemes:
        try:
            out[scheme] = embed(scheme, config.cover, config.payload, opts).text
        except (WatermarkError, ValueError) as exc:
            out[scheme] = exc
    return out


def _source(config: ExperimentConfig, scheme: SchemeId) -> str:
    path = config.source_files.get(scheme)
    if path is None:
        return default_source(scheme)
    return Path(path).read_text(encoding="utf-8")


def build_prompt(config: ExperimentConfig, experiment: Experiment, scheme: SchemeId, stego: str) -> str:
    if experiment is Experiment.DETECTABILITY:
        return build_detect_prompt(stego)
    name = config.scheme_names.get(scheme, PROMPT_NAMES[scheme])
    if experiment is Experiment.NAME:
        return build_extract_prompt(name, stego)
    return build_extract_with_code_prompt(name, stego, _source(config, scheme))


def plan(config: ExperimentConfig, experiment) -> list[_Job]:
    """Cells in model-major, scheme-minor order; the original comes last in Experiment 1."""
    experiment = Experiment.parse(experiment)
    stegos = _stego_texts(config)
    jobs = []
    for profile in config.models:
        for scheme in config.schemes:
            stego = stegos[scheme]
            if isinstance(stego, Exception):
                jobs.append(_Job(profile, scheme.value, "", True, f"embed failed: {stego}"))
                continue
            try:
                prompt = build_prompt(config, experiment, scheme, stego)
            except (HarnessError, OSError) as exc:
                jobs.append(_Job(profile, scheme.value, "", True, str(exc)))
                continue
            jobs.append(_Job(profile, scheme.value, prompt, True))
        if experiment is Experiment.DETECTABILITY:
            jobs.append(_Job(profile, ORIGINAL, build_detect_prompt(config.cover.text), False))
    return jobs


def _run_job(job: _Job, experiment: Experiment, target: str, transport: Transport) -> ProbeRecord:
    record = ProbeRecord(
        experiment=experiment.value,
        scheme=job.scheme,
        model=job.profile.name,
        prompt=job.prompt,
        response="",
        classification="skipped",
        timestamp=_now(),
        latency=0.0,
        target=target,
        watermarked=job.watermarked,
        error=job.error,
    )
    if job.error:
        return record
    try:
        result = send(job.profile, job.prompt, transport, Cell(experiment.value, job.scheme, job.profile.name))
    except HarnessError as exc:
        record.error = f"{type(exc).__name__}: {exc}"
        log.warning("%s/%s skipped: %s", job.profile.name, job.scheme, record.error)
        return record
    record.response = result.text
    record.latency = result.latency
    record.classification = classify_response(experiment, result.text, target, watermarked=job.watermarked)
    return record


def run_experiment(config: ExperimentConfig, experiment, transport: Transport, out_dir=None) -> list[ProbeRecord]:
    """One request per cell, no retries.  Failed cells become `skipped` records.

    With `out_dir` the records are appended to ``records.jsonl`` in cell
    order as they complete.
    """
    experiment = Experiment.parse(experiment)
    jobs = plan(config, experiment)
    store = None
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        store = open(Path(out_dir) / RECORDS_FILE, "a", encoding="utf-8", newline="\n")
    records = []
    try:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            futures = [pool.submit(_run_job, job, experiment, config.payload, transport) for job in jobs]
            for fut in futures:
                record = fut.result()
                records.append(record)
                if store:
                    store.write(record.to_json() + "\n")
                    store.flush()
    finally:
        if store:
            store.close()
    return records


def load_records(path) -> list[ProbeRecord]:
    """Records from a JSONL file, or from every ``*.jsonl`` in a directory."""
    path = Path(path)
    files = sorted(path.glob("*.jsonl")) if path.is_dir() else [path]
    records = []
    for f in files:
        for line in f.read_text(encoding="utf-8").splitlines():
            if line.strip():
                records.append(ProbeRecord.from_dict(json.loads(line)))
    return records


# -- aggregation ----------------------------------------------------------------

def _scheme_order(scheme: str) -> int:
    ids = [s.value for s in SchemeId] + [ORIGINAL]
    return ids.index(scheme) if scheme in ids else len(ids)


@dataclass
class AccuracyMatrices:
    experiment: Experiment | None
    models: list[str] = field(default_factory=list)
    schemes: list[str] = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)  # (model, scheme, label) -> n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.experiment.labels if self.experiment else ()

    def count(self, label: str, model: str | None = None, scheme: str | None = None) -> int:
        return sum(
            n for (m, s, lab), n in self.counts.items()
            if lab == label and model in (None, m) and scheme in (None, s)
        )

    def by_model(self) -> dict[str, Counter]:
        return {m: Counter({lab: self.count(lab, model=m) for lab in self.labels}) for m in self.models}

    def by_scheme(self) -> dict[str, Counter]:
        return {s: Counter({lab: self.count(lab, scheme=s) for lab in self.labels}) for s in self.schemes}

    def rows(self, view: str = "matrix"):
        for model in (self.models if view != "scheme" else ["*"]):
            for scheme in (self.schemes if view != "model" else ["*"]):
                for label in self.labels:
                    yield model, scheme, label, self.count(
                        label,
                        model=None if model == "*" else model,
                        scheme=None if scheme == "*" else scheme,
                    )

    def to_csv(self, view: str = "matrix") -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(self.rows(view))
        return buf.getvalue()


def aggregate(records: list[ProbeRecord]) -> AccuracyMatrices:
    experiments = {r.experiment for r in records}
    if len(experiments) > 1:
        raise MixedExperiments(f"records span experiments {sorted(experiments)}")
    if not records:
        return AccuracyMatrices(None)
    result = AccuracyMatrices(Experiment(experiments.pop()))
    for r in records:
        if r.model not in result.models:
            result.models.append(r.model)
        result.counts[(r.model, r.scheme, r.classification)] += 1
    result.schemes = sorted({r.scheme for r in records}, key=_scheme_order)
    return result


MATRIX_FILES = {"matrix": "matrix.csv", "model": "by_model.csv", "scheme": "by_scheme.csv"}


def write_matrices(matrices: AccuracyMatrices, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for view, name in MATRIX_FILES.items():
        path = out_dir / name
        path.write_bytes(matrices.to_csv(view).encode("utf-8"))
        written.append(path)
    return written
