"""Schemes that swap visible characters for look-alike codepoints.

LookALikes and Rizzo carry one bit per table character (original = 0,
variant = 1).  Shazzad-Ur-Rahman replaces whitespace with one of 64 space
symbols, six bits each.  Carriers are visited in document order.
"""

from __future__ import annotations

import unicodedata

from .core import (
    BitString,
    SchemeId,
    StegoText,
    as_cover,
    frame_header,
    frame_payload,
    unframe_payload,
)
from .errors import CorruptFrame, InsufficientCapacity, NoWatermarkFound
from .tables import ConfusableTable, lookalikes_table, rizzo_table, space_alphabet64

VARIATION_SELECTORS = frozenset(chr(cp) for cp in range(0xFE00, 0xFE10))


def _header_or_none(bits: BitString, scheme: str) -> None:
    # all-original carriers decode to an empty frame; that is a clean text
    if frame_header(bits) == 0:
        raise NoWatermarkFound(f"{scheme}: empty frame, no watermark present")


# -- one bit per confusable character -----------------------------------------

def eligible_positions(text: str, table: ConfusableTable) -> list[int]:
    carriers = table.to_variant.keys() | table.to_original.keys()
    return [i for i, ch in enumerate(text) if ch in carriers]


def embed_confusables(cover, payload, table: ConfusableTable, scheme: SchemeId) -> StegoText:
    cover = as_cover(cover)
    bits = frame_payload(payload)
    slots = eligible_positions(cover.text, table)
    if len(bits) > len(slots):
        raise InsufficientCapacity(
            f"{scheme}: frame needs {len(bits)} carriers, cover has {len(slots)}"
        )
    to_var, to_orig = table.to_variant, table.to_original
    chars = list(cover.text)
    spans = []
    for pos, bit in zip(slots, bits):
        base = to_orig.get(chars[pos], chars[pos])
        new = to_var[base] if bit else base
        if new != chars[pos]:
            spans.append((pos, pos + 1))
        chars[pos] = new
    return StegoText("".join(chars), scheme, len(bits), tuple(spans))


def extract_confusables(text: str, table: ConfusableTable, scheme: SchemeId):
    variants = table.to_original
    slots = eligible_positions(text, table)
    if len(slots) < 16:
        raise NoWatermarkFound(f"{scheme}: only {len(slots)} carrier characters")
    bits = BitString("".join("1" if text[i] in variants else "0" for i in slots))
    _header_or_none(bits, str(scheme))
    return unframe_payload(bits)


def embed_lookalikes(cover, payload) -> StegoText:
    return embed_confusables(cover, payload, lookalikes_table(), SchemeId.LOOKALIKES)


def extract_lookalikes(text: str):
    return extract_confusables(text, lookalikes_table(), SchemeId.LOOKALIKES)


def embed_rizzo(cover, payload) -> StegoText:
    return embed_confusables(cover, payload, rizzo_table(), SchemeId.RIZZO)


def extract_rizzo(text: str):
    return extract_confusables(text, rizzo_table(), SchemeId.RIZZO)


# -- six bits per whitespace ---------------------------------------------------

def space_tokens(text: str, alphabet: tuple[str, ...]) -> list[tuple[int, str]]:
    """(index, token) for every alphabet symbol in `text`, longest match first."""
    lookup = set(alphabet)
    tokens = []
    i = 0
    while i < len(text):
        pair = text[i:i + 2]
        if len(pair) == 2 and pair in lookup:
            tokens.append((i, pair))
            i += 2
        elif text[i] in lookup:
            tokens.append((i, text[i]))
            i += 1
        else:
            i += 1
    return tokens


def foreign_spaces(text: str, alphabet: tuple[str, ...]) -> list[str]:
    """Space separators or stray variation selectors that no alphabet token explains."""
    covered = set()
    for i, tok in space_tokens(text, alphabet):
        covered.update(range(i, i + len(tok)))
    return [
        ch for i, ch in enumerate(text)
        if i not in covered and (unicodedata.category(ch) == "Zs" or ch in VARIATION_SELECTORS)
    ]


def substitute_tokens(text: str, tokens, symbols) -> tuple[str, tuple[tuple[int, int], ...]]:
    """Replace each (index, token) with the matching symbol; spans are in output coordinates."""
    out, spans = [], []
    prev = 0
    shift = 0
    for (i, tok), sym in zip(tokens, symbols):
        out.append(text[prev:i])
        if sym != tok:
            spans.append((i + shift, i + shift + len(sym)))
        out.append(sym)
        shift += len(sym) - len(tok)
        prev = i + len(tok)
    out.append(text[prev:])
    return "".join(out), tuple(spans)


def embed_shazzad(cover, payload) -> StegoText:
    cover = as_cover(cover)
    alphabet = space_alphabet64()
    bits = frame_payload(payload)
    groups = bits.chunks(6)
    tokens = space_tokens(cover.text, alphabet)
    if len(bits) > 6 * len(tokens):
        raise InsufficientCapacity(
            f"shazzad: frame needs {len(groups)} spaces, cover has {len(tokens)}"
        )
    text, spans = substitute_tokens(cover.text, tokens, [alphabet[g] for g in groups])
    return StegoText(text, SchemeId.SHAZZAD, len(bits), spans)


def extract_shazzad(text: str):
    alphabet = space_alphabet64()
    stray = foreign_spaces(text, alphabet)
    if stray:
        raise CorruptFrame(f"shazzad: space U+{ord(stray[0]):04X} is not in the alphabet")
    index = {sym: v for v, sym in enumerate(alphabet)}
    values = [index[tok] for _, tok in space_tokens(text, alphabet)]
    if 6 * len(values) < 16:
        raise NoWatermarkFound(f"shazzad: only {len(values)} spaces")
    bits = BitString.from_chunks(values, 6)
    _header_or_none(bits, "shazzad")
    return unframe_payload(bits)


def skeleton(text: str) -> str:
    """Map every substitution-scheme variant back to its original character."""
    back = {**lookalikes_table().to_original, **rizzo_table().to_original}
    out = "".join(back.get(ch, ch) for ch in text)
    alphabet = space_alphabet64()
    tokens = space_tokens(out, alphabet)
    out, _ = substitute_tokens(out, tokens, [" "] * len(tokens))
    return out
