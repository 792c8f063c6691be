"""Rule-based detector for format-based watermarks.

`scan` counts the character classes the ten schemes leave behind and calls a
text watermarked when any class is non-zero.  Attribution turns the same
census into per-scheme scores and halves any score whose extractor cannot
decode a frame from the text.  Thresholds are heuristics pinned by tests.
"""

from __future__ import annotations

import json
import re
import statistics
import unicodedata
from dataclasses import asdict, dataclass, field

from .core import SchemeId
from .errors import NotWatermarked, WatermarkError
from .substitution import VARIATION_SELECTORS
from .tables import lookalikes_table, rizzo_table, space_alphabet16
from .whitespace import SMALL_SPACES
from .zerowidth import ZERO_WIDTH_CHARS

WRAP_MIN_LINES = 10
WRAP_MAX_WIDTH = 80
SNOW_MIN_RUN = 16

# Greek capitals that render like Latin ones; not used by any embedder.
_EXTRA_CONFUSABLES = dict(zip("ΑΒΕΖΗΙΚΜΝΟΡΤΥΧοЅ", "ABEZHIKMNOPTYXoS"))

_ZW_RUN = re.compile("[" + "".join(sorted(ZERO_WIDTH_CHARS)) + "]+")
_SMALL_PAIR = re.compile("[" + "".join(SMALL_SPACES) + "]{2}")
_TRAILING_RUN = re.compile(r"(?:^|\n)([ \t]+)\Z")


def _letter_variants(table) -> dict[str, str]:
    return {v: o for (o, v), cls in zip(table.entries, table.classes) if cls != "whitespace"}


@dataclass
class CharCensus:
    zero_width_count: int = 0
    confusable_count: int = 0
    exotic_space_count: int = 0
    trailing_ws_lines: int = 0
    line_length_variance: float = 0.0
    line_count: int = 0
    max_line_length: int = 0
    small_space_pairs: int = 0
    variation_selector_spaces: int = 0
    wrapped_signature: bool = False


@dataclass
class DetectionReport:
    census: CharCensus
    verdict: str
    attributions: list[tuple[SchemeId, float]] = field(default_factory=list)

    @property
    def watermarked(self) -> bool:
        return self.verdict == "watermarked"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "census": asdict(self.census),
            "attributions": [{"scheme": s.value, "score": round(score, 4)} for s, score in self.attributions],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def census(text: str) -> CharCensus:
    confusables = {
        **_EXTRA_CONFUSABLES,
        **_letter_variants(lookalikes_table()),
        **_letter_variants(rizzo_table()),
    }
    c = CharCensus()
    prev = ""
    for ch in text:
        if ch in ZERO_WIDTH_CHARS:
            c.zero_width_count += 1
        elif ch in confusables:
            c.confusable_count += 1
        elif ch != " " and unicodedata.category(ch) == "Zs":
            c.exotic_space_count += 1
        elif ch in VARIATION_SELECTORS and prev and unicodedata.category(prev) == "Zs":
            c.variation_selector_spaces += 1
            if prev == " ":
                c.exotic_space_count += 1
        prev = ch
    c.small_space_pairs = len(_SMALL_PAIR.findall(text))

    lines = text.split("\n")
    visible = [ln for ln in lines if ln.strip()]
    c.line_count = len(visible)
    c.trailing_ws_lines = sum(1 for ln in lines if ln.endswith((" ", "\t")))
    if visible:
        lengths = [len(ln) for ln in visible]
        c.max_line_length = max(lengths)
        c.line_length_variance = statistics.pvariance(lengths)
    c.wrapped_signature = c.line_count >= WRAP_MIN_LINES and c.max_line_length <= WRAP_MAX_WIDTH
    return c


def _signals(text: str, c: CharCensus) -> dict[SchemeId, float]:
    s = dict.fromkeys(SchemeId, 0.0)
    end = len(text.rstrip(" \t\n"))
    for m in _ZW_RUN.finditer(text):
        if m.start() == 0:
            s[SchemeId.AITSTEG] = 1.0
        elif m.end() >= end:
            s[SchemeId.COVERTSYS] = 1.0
        else:
            s[SchemeId.STEGCLOAK] = 1.0

    run = _TRAILING_RUN.search(text)
    if run and len(run.group(1)) >= SNOW_MIN_RUN:
        s[SchemeId.SNOW] = 1.0
    elif text.endswith((" ", "\t")):
        s[SchemeId.SNOW] = 0.3

    if c.wrapped_signature:
        s[SchemeId.SHIU] = 0.8 + (0.2 if c.trailing_ws_lines else 0.0)

    look_only = set(lookalikes_table().to_original) - set(rizzo_table().to_original)
    rizzo_only = set(_letter_variants(rizzo_table())) - set(lookalikes_table().to_original)
    rizzo_spaces = {v for (o, v), cls in zip(rizzo_table().entries, rizzo_table().classes) if cls == "whitespace"}
    if c.confusable_count:
        has_look_only = any(ch in look_only for ch in text)
        has_rizzo_only = any(ch in rizzo_only for ch in text)
        has_rizzo_space = any(ch in rizzo_spaces for ch in text)
        s[SchemeId.LOOKALIKES] = 1.0 if has_look_only or not (has_rizzo_only or has_rizzo_space) else 0.5
        s[SchemeId.RIZZO] = 1.0 if has_rizzo_only or has_rizzo_space else 0.5

    if c.exotic_space_count:
        letters_damp = 0.3 if c.confusable_count else 1.0
        pair_chars = 2 * c.small_space_pairs
        if c.small_space_pairs:
            s[SchemeId.UNISPACH] = letters_damp * min(1.0, pair_chars / c.exotic_space_count)
        spaces = [ch for ch in text if ch == " " or unicodedata.category(ch) == "Zs"]
        exotic_share = c.exotic_space_count / max(1, len(spaces))
        alphabet16 = set(space_alphabet16())
        in16 = all(ch in alphabet16 for ch in spaces)
        if c.variation_selector_spaces:
            s[SchemeId.SHAZZAD] = letters_damp
        else:
            s[SchemeId.SHAZZAD] = letters_damp * 0.6 * (1.0 - exotic_share / 2)
            if in16:
                s[SchemeId.INNAMARK] = letters_damp * (0.6 + 0.4 * exotic_share)
    return s


def _decodes(scheme: SchemeId, text: str) -> bool:
    from .schemes import extract  # the registry imports every codec

    try:
        extract(scheme, text)
    except (WatermarkError, ValueError):
        return False
    return True


def scan(text: str) -> DetectionReport:
    c = census(text)
    flagged = (
        c.zero_width_count > 0
        or c.confusable_count > 0
        or c.exotic_space_count > 0
        or c.trailing_ws_lines > 0
        or c.wrapped_signature
    )
    report = DetectionReport(c, "watermarked" if flagged else "clean")
    if flagged:
        scores = []
        for scheme, signal in _signals(text, c).items():
            if signal > 0:
                signal *= 1.0 if _decodes(scheme, text) else 0.5
            scores.append((scheme, signal))
        report.attributions = sorted(scores, key=lambda kv: -kv[1])
    return report


def attribute(report: DetectionReport) -> list[tuple[SchemeId, float]]:
    if not report.watermarked:
        raise NotWatermarked("report verdict is clean")
    return [(s, score) for s, score in report.attributions if score > 0]
