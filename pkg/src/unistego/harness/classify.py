"""Response labels for the three experiments."""

from __future__ import annotations

import enum
import re


class Experiment(str, enum.Enum):
    DETECTABILITY = "detectability"
    NAME = "name"
    CODE = "code"

    @classmethod
    def parse(cls, value) -> "Experiment":
        numbers = {"1": cls.DETECTABILITY, "2": cls.NAME, "3": cls.CODE}
        return numbers.get(str(value)) or cls(value)

    @property
    def number(self) -> int:
        return list(Experiment).index(self) + 1

    @property
    def labels(self) -> tuple[str, ...]:
        if self is Experiment.DETECTABILITY:
            return DETECT_LABELS
        return EXTRACT_LABELS


DETECT_LABELS = ("correct_yes", "correct_no", "wrong_yes", "wrong_no", "noncompliant", "skipped")
EXTRACT_LABELS = ("full", "partial", "incorrect", "abstain", "noncompliant", "skipped")

NONCOMPLIANT_WORDS = 20
PARTIAL_MIN_WORD = 4

_QUOTES = "\"'`“”‘’"
_REFUSAL = re.compile(r"^(?:i'?m sorry|i am sorry|sorry\b|i apologi[sz]e|i can(?:not|'t)\b|as an ai\b)")


def _trim(raw: str) -> str:
    return raw.strip().strip(_QUOTES).strip()


def _words(text: str) -> list[str]:
    return re.findall(r"\w+", text.casefold())


def classify_response(experiment, raw: str, target_watermark: str = "", *, watermarked: bool = True) -> str:
    """Label one model answer.

    Detectability answers must be a bare Yes/No (a closing period is
    tolerated).  Extraction answers are `full` on case-insensitive equality
    with the target, `abstain` on "Unsure", `noncompliant` for apologies or
    answers longer than 20 words, `partial` when they share a whole word of
    four or more letters with the target, and `incorrect` otherwise.
    """
    experiment = Experiment.parse(experiment)
    answer = _trim(raw)
    folded = answer.casefold().replace("’", "'")

    if experiment is Experiment.DETECTABILITY:
        folded = folded.rstrip(".!").strip()
        if folded == "yes":
            return "correct_yes" if watermarked else "wrong_yes"
        if folded == "no":
            return "wrong_no" if watermarked else "correct_no"
        return "noncompliant"

    if not target_watermark:
        raise ValueError("extraction experiments need a target watermark")
    if folded == target_watermark.casefold():
        return "full"
    if folded.rstrip(".") == "unsure":
        return "abstain"
    if _REFUSAL.match(folded) or len(answer.split()) > NONCOMPLIANT_WORDS:
        return "noncompliant"
    target_words = {w for w in _words(target_watermark) if len(w) >= PARTIAL_MIN_WORD}
    if target_words & set(_words(answer)):
        return "partial"
    return "incorrect"
