"""Schemes carried by whitespace structure.

* SNOW appends a run of spaces (0) and tabs (1) after the text.
* UniSpaCh turns an inter-word space into a pair of thin/hair spaces and can
  spill into filler runs at paragraph ends.
* Innamark swaps every space for one of 16 space symbols, repeating the frame
  as often as the cover allows.
* Shiu re-wraps the text and encodes bits in where each line breaks and in
  an optional trailing space.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import (
    BitString,
    SchemeId,
    StegoText,
    as_cover,
    bits_to_bytes,
    frame_header,
    frame_payload,
    framed_length,
    paragraph_ends,
    unframe_payload,
    HEADER_BITS,
)
from .errors import (
    ConfigMismatch,
    CorruptFrame,
    InsufficientCapacity,
    NoWatermarkFound,
    TruncatedFrame,
)
from .substitution import foreign_spaces, space_tokens, substitute_tokens
from .tables import space_alphabet16

THIN_SPACE = "\u2009"
HAIR_SPACE = "\u200a"
SMALL_SPACES = (THIN_SPACE, HAIR_SPACE)
UNISPACH_PAIRS = (
    THIN_SPACE + THIN_SPACE,
    THIN_SPACE + HAIR_SPACE,
    HAIR_SPACE + THIN_SPACE,
    HAIR_SPACE + HAIR_SPACE,
)
FILLER_PAIRS_PER_PARAGRAPH = 16

DEFAULT_WRAP_WIDTH = 24
BREAK_CANDIDATES = 4

_TRAILING_RUN = re.compile(r"[ \t]*\Z")
_PARAGRAPH_SPLIT = re.compile(r"\n[^\S\n]*\n")


def _exact_unframe(bits: BitString):
    payload = unframe_payload(bits)
    if len(bits) != framed_length(payload):
        raise CorruptFrame(f"carrier holds {len(bits)} bits, frame declares {framed_length(payload)}")
    return payload


def normalize_whitespace(text: str) -> str:
    """Collapse every whitespace run (including exotic spaces) to one U+0020."""
    return " ".join(text.split())


# -- SNOW ----------------------------------------------------------------------

def embed_snow(cover, payload) -> StegoText:
    cover = as_cover(cover)
    bits = frame_payload(payload)
    head = cover.text
    if head and not head.endswith("\n"):
        head += "\n"
    run = "".join("\t" if b == "1" else " " for b in bits.bits)
    text = head + run
    return StegoText(text, SchemeId.SNOW, len(bits), ((len(cover.text), len(text)),))


def extract_snow(text: str):
    run = _TRAILING_RUN.search(text).group()
    if len(run) < HEADER_BITS:
        raise NoWatermarkFound(f"trailing whitespace run of {len(run)} is too short")
    return _exact_unframe(BitString(run.replace(" ", "0").replace("\t", "1")))


# -- UniSpaCh ------------------------------------------------------------------

def unispach_capacity(text: str) -> tuple[int, int]:
    """(word-gap bits, paragraph-filler bits)."""
    return 2 * text.count(" "), 2 * FILLER_PAIRS_PER_PARAGRAPH * len(paragraph_ends(text))


def embed_unispach(cover, payload) -> StegoText:
    cover = as_cover(cover)
    text = cover.text
    bits = frame_payload(payload)
    pairs = [UNISPACH_PAIRS[v] for v in bits.chunks(2)]
    gaps = [i for i, ch in enumerate(text) if ch == " "]
    ends = paragraph_ends(text)
    if len(pairs) > len(gaps) + FILLER_PAIRS_PER_PARAGRAPH * len(ends):
        gap_bits, filler_bits = unispach_capacity(text)
        raise InsufficientCapacity(
            f"unispach: frame needs {len(bits)} bits, cover offers {gap_bits} + {filler_bits} filler"
        )
    # word gaps are used before any filler; bits are then laid out in document order
    used_gaps = set(gaps[:len(pairs)])
    filler = {}
    remaining = len(pairs) - len(used_gaps)
    for end in ends:
        if remaining <= 0:
            break
        n = min(FILLER_PAIRS_PER_PARAGRAPH, remaining)
        filler[end] = n
        remaining -= n

    stream = iter(pairs)
    out, spans = [], []
    pos = 0
    for i in range(len(text) + 1):
        if i in filler:
            run = "".join(next(stream) for _ in range(filler[i]))
            spans.append((pos, pos + len(run)))
            out.append(run)
            pos += len(run)
        if i == len(text):
            break
        if i in used_gaps:
            out.append(next(stream))
            spans.append((pos, pos + 2))
            pos += 2
        else:
            out.append(text[i])
            pos += 1
    return StegoText("".join(out), SchemeId.UNISPACH, len(bits), tuple(spans))


def extract_unispach(text: str):
    smalls = [ch for ch in text if ch in SMALL_SPACES]
    if not smalls:
        raise NoWatermarkFound("no thin/hair space pairs")
    if len(smalls) % 2:
        raise CorruptFrame("odd number of small spaces")
    values = [UNISPACH_PAIRS.index(smalls[i] + smalls[i + 1]) for i in range(0, len(smalls), 2)]
    return _exact_unframe(BitString.from_chunks(values, 2))


# -- Innamark ------------------------------------------------------------------

def embed_innamark(cover, payload) -> StegoText:
    cover = as_cover(cover)
    alphabet = space_alphabet16()
    bits = frame_payload(payload)
    nibbles = bits.chunks(4)
    tokens = space_tokens(cover.text, alphabet)
    if len(nibbles) > len(tokens):
        raise InsufficientCapacity(
            f"innamark: frame needs {len(nibbles)} spaces, cover has {len(tokens)}"
        )
    symbols = [alphabet[nibbles[k % len(nibbles)]] for k in range(len(tokens))]
    text, spans = substitute_tokens(cover.text, tokens, symbols)
    return StegoText(text, SchemeId.INNAMARK, len(bits), spans)


def _majority(copies: list[str]) -> str:
    out = []
    for column in zip(*copies):
        ones = column.count("1")
        zeros = len(column) - ones
        # ties keep the first copy's bit
        out.append(column[0] if ones == zeros else ("1" if ones > zeros else "0"))
    return "".join(out)


def innamark_copies(bits: BitString, n_bytes: int) -> list[str]:
    size = HEADER_BITS + 8 * n_bytes
    return [bits.bits[i:i + size] for i in range(0, len(bits) - size + 1, size)]


def extract_innamark(text: str):
    alphabet = space_alphabet16()
    stray = foreign_spaces(text, alphabet)
    if stray:
        raise CorruptFrame(f"innamark: space U+{ord(stray[0]):04X} is not in the alphabet")
    index = {sym: v for v, sym in enumerate(alphabet)}
    values = [index[tok] for _, tok in space_tokens(text, alphabet)]
    bits = BitString.from_chunks(values, 4)
    if len(bits) < HEADER_BITS:
        raise NoWatermarkFound(f"innamark: only {len(values)} spaces")
    n_bytes = frame_header(bits)
    if n_bytes == 0:
        raise NoWatermarkFound("innamark: empty frame, no watermark present")
    seen = set()
    while n_bytes not in seen:
        seen.add(n_bytes)
        copies = innamark_copies(bits, n_bytes)
        if not copies:
            raise TruncatedFrame(f"innamark: header declares {n_bytes} bytes, not one full copy present")
        voted = BitString(_majority(copies))
        voted_len = frame_header(voted)
        if voted_len == n_bytes:
            try:
                return bits_to_bytes(voted[HEADER_BITS:])
            except ValueError as exc:
                raise CorruptFrame(str(exc)) from None
        if voted_len == 0:
            break
        n_bytes = voted_len
    raise CorruptFrame("innamark: repetitions disagree on the frame length")


# -- Shiu ----------------------------------------------------------------------

@dataclass
class LineRecord:
    words: list[str]
    break_index: int  # words dropped from the greedy break
    trailing_space: bool

    @property
    def text(self) -> str:
        return " ".join(self.words) + (" " if self.trailing_space else "")


@dataclass
class LineLayout:
    wrap_width: int = DEFAULT_WRAP_WIDTH
    paragraphs: list[list[LineRecord]] = field(default_factory=list)

    @property
    def lines(self) -> list[LineRecord]:
        return [line for para in self.paragraphs for line in para]

    def render(self) -> str:
        return "\n\n".join("\n".join(line.text for line in para) for para in self.paragraphs)


def _greedy_end(words: list[str], start: int, width: int) -> int:
    end = start + 1
    length = len(words[start])
    while end < len(words) and length + 1 + len(words[end]) <= width:
        length += 1 + len(words[end])
        end += 1
    return end


def break_candidates(words: list[str], start: int, width: int) -> list[int]:
    """Admissible line ends, best (greedy) first; at most four."""
    g = _greedy_end(words, start, width)
    return [g - j for j in range(min(BREAK_CANDIDATES, g - start))]


def _break_bits(n_candidates: int) -> int:
    if n_candidates >= 4:
        return 2
    return 1 if n_candidates >= 2 else 0


def _paragraph_words(text: str) -> list[list[str]]:
    return [words for words in (p.split() for p in _PARAGRAPH_SPLIT.split(text)) if words]


def _guaranteed_bits(words: list[str], width: int) -> int:
    """Fewest bits any layout of `words` can carry (the worst path through the breaks)."""
    n = len(words)
    best = [0] * (n + 1)
    for start in range(n - 1, -1, -1):
        cands = break_candidates(words, start, width)
        usable = cands[:1 << _break_bits(len(cands))]
        best[start] = 1 + _break_bits(len(cands)) + min(best[e] for e in usable)
    return best[0]


def shiu_capacity(text: str, wrap_width: int = DEFAULT_WRAP_WIDTH) -> int:
    return sum(_guaranteed_bits(words, wrap_width) for words in _paragraph_words(text))


def embed_shiu(cover, payload, *, wrap_width: int = DEFAULT_WRAP_WIDTH) -> StegoText:
    if wrap_width < 1:
        raise ValueError("wrap_width must be positive")
    cover = as_cover(cover)
    bits = frame_payload(payload)
    capacity = shiu_capacity(cover.text, wrap_width)
    if len(bits) > capacity:
        raise InsufficientCapacity(
            f"shiu: frame needs {len(bits)} bits, cover wraps to {capacity} at width {wrap_width}"
        )
    stream = iter(bits.bits)

    def take(n: int) -> int:
        # past the frame, pad with zeros (greedy break, no trailing space)
        return int("".join(next(stream, "0") for _ in range(n)) or "0", 2)

    layout = LineLayout(wrap_width)
    for words in _paragraph_words(cover.text):
        para, start = [], 0
        while start < len(words):
            cands = break_candidates(words, start, wrap_width)
            j = take(_break_bits(len(cands)))
            trailing = bool(take(1))
            end = cands[j]
            para.append(LineRecord(words[start:end], j, trailing))
            start = end
        layout.paragraphs.append(para)
    text = layout.render()
    return StegoText(text, SchemeId.SHIU, len(bits), ((0, len(text)),) if text else ())


def read_layout(text: str, wrap_width: int = DEFAULT_WRAP_WIDTH) -> LineLayout:
    layout = LineLayout(wrap_width)
    for block in text.split("\n\n"):
        lines = [ln for ln in block.split("\n") if ln.strip()]
        words = [w for ln in lines for w in ln.split()]
        para, start = [], 0
        for ln in lines:
            line_words = ln.split()
            if len(ln) > wrap_width + 1 and len(line_words) > 1:
                raise ConfigMismatch(f"line of {len(ln)} characters exceeds wrap width {wrap_width}")
            end = start + len(line_words)
            cands = break_candidates(words, start, wrap_width)
            usable = cands[:1 << _break_bits(len(cands))]
            if end not in usable:
                raise CorruptFrame(f"line break after word {end} is not a candidate at width {wrap_width}")
            para.append(LineRecord(line_words, usable.index(end), ln.endswith(" ")))
            start = end
        if para:
            layout.paragraphs.append(para)
    return layout


def extract_shiu(text: str, *, wrap_width: int = DEFAULT_WRAP_WIDTH):
    if not any("\n" in block.strip("\n") for block in text.split("\n\n")):
        raise NoWatermarkFound("text is not line-wrapped")
    layout = read_layout(text, wrap_width)
    out = []
    for para in layout.paragraphs:
        words = [w for line in para for w in line.words]
        start = 0
        for line in para:
            n_bits = _break_bits(len(break_candidates(words, start, wrap_width)))
            if n_bits:
                out.append(format(line.break_index, f"0{n_bits}b"))
            out.append("1" if line.trailing_space else "0")
            start += len(line.words)
    bits = BitString("".join(out))
    if len(bits) < HEADER_BITS:
        raise NoWatermarkFound(f"shiu: layout carries only {len(bits)} bits")
    if frame_header(bits) == 0:
        raise NoWatermarkFound("shiu: empty frame, no watermark present")
    return unframe_payload(bits)
