"""Schemes carried by invisible zero-width characters.

AITSteg prefixes the cover, CovertSYS suffixes it and StegCloak hides one
run right after the first space.  The binary schemes use ZWSP/ZWNJ as 0/1
between a ZWJ start marker and a WORD JOINER end marker; StegCloak packs two
bits per character over all four.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass

from .core import (
    BitString,
    SchemeId,
    StegoText,
    as_cover,
    as_payload,
    bits_to_bytes,
    bytes_to_bits,
    frame_payload,
    framed_length,
    unframe_payload,
    MAX_PAYLOAD_BYTES,
)
from .errors import CorruptFrame, NoInsertionPoint, NoWatermarkFound, PayloadTooLarge, TruncatedFrame

ZWSP = "\u200b"
ZWNJ = "\u200c"
ZWJ = "\u200d"
WORD_JOINER = "\u2060"
BOM = "\ufeff"

ZERO = ZWSP
ONE = ZWNJ
START_MARKER = ZWJ
END_MARKER = WORD_JOINER
QUATERNARY = (ZWSP, ZWNJ, ZWJ, WORD_JOINER)
ZERO_WIDTH_CHARS = frozenset({ZWSP, ZWNJ, ZWJ, WORD_JOINER, BOM})

AITSTEG_HEADER_BITS = 48

_QUAT_RUN = re.compile("[" + "".join(QUATERNARY) + "]+")


@dataclass(frozen=True)
class AitstegHeader:
    timestamp: int
    length: int

    def to_bits(self) -> BitString:
        return BitString.from_int(self.timestamp, 32) + BitString.from_int(self.length, 16)


def strip_zero_width(text: str) -> str:
    return "".join(ch for ch in text if ch not in ZERO_WIDTH_CHARS)


def encode_binary(bits: BitString) -> str:
    return "".join(ONE if b == "1" else ZERO for b in bits.bits)


def decode_binary(run: str) -> BitString:
    try:
        return BitString("".join({ZERO: "0", ONE: "1"}[ch] for ch in run))
    except KeyError as exc:
        raise CorruptFrame(f"unexpected character U+{ord(exc.args[0]):04X} in zero-width run") from None


def encode_quaternary(bits: BitString) -> str:
    return "".join(QUATERNARY[v] for v in bits.chunks(2))


def decode_quaternary(run: str) -> BitString:
    return BitString.from_chunks((QUATERNARY.index(ch) for ch in run), 2)


def _exact_unframe(bits: BitString):
    payload = unframe_payload(bits)
    if len(bits) != framed_length(payload):
        raise CorruptFrame(f"run carries {len(bits)} bits, frame declares {framed_length(payload)}")
    return payload


# -- AITSteg -----------------------------------------------------------------

def embed_aitsteg(cover, payload, *, timestamp: int | None = None) -> StegoText:
    cover, payload = as_cover(cover), as_payload(payload)
    if len(payload) > MAX_PAYLOAD_BYTES:
        raise PayloadTooLarge(f"{len(payload)} bytes exceeds the 16-bit length field")
    if timestamp is None:
        timestamp = int(time.time())
    header = AitstegHeader(timestamp & 0xFFFFFFFF, len(payload))
    bits = header.to_bits() + bytes_to_bits(payload)
    prefix = START_MARKER + encode_binary(bits) + END_MARKER
    return StegoText(prefix + cover.text, SchemeId.AITSTEG, len(bits), ((0, len(prefix)),))


def read_aitsteg_header(text: str) -> tuple[AitstegHeader, BitString]:
    if not text.startswith(START_MARKER):
        raise NoWatermarkFound("text does not begin with the AITSteg start marker")
    end = text.find(END_MARKER, 1)
    if end < 0:
        raise CorruptFrame("AITSteg end marker missing")
    bits = decode_binary(text[1:end])
    if len(bits) < AITSTEG_HEADER_BITS:
        raise TruncatedFrame(f"AITSteg header needs 48 bits, got {len(bits)}")
    header = AitstegHeader(bits[:32].to_int(), bits[32:48].to_int())
    return header, bits[AITSTEG_HEADER_BITS:]


def extract_aitsteg(text: str):
    header, body = read_aitsteg_header(text)
    if len(body) != 8 * header.length:
        raise CorruptFrame(f"header declares {header.length} bytes, run carries {len(body)} bits")
    try:
        return bits_to_bytes(body)
    except ValueError as exc:
        raise CorruptFrame(str(exc)) from None


# -- CovertSYS ---------------------------------------------------------------

def embed_covertsys(cover, payload) -> StegoText:
    cover = as_cover(cover)
    bits = frame_payload(payload)
    suffix = START_MARKER + encode_binary(bits) + END_MARKER
    n = len(cover.text)
    return StegoText(cover.text + suffix, SchemeId.COVERTSYS, len(bits), ((n, n + len(suffix)),))


def extract_covertsys(text: str):
    end = text.rfind(END_MARKER)
    if end < 0:
        raise NoWatermarkFound("no CovertSYS end marker")
    start = text.rfind(START_MARKER, 0, end)
    if start < 0:
        raise CorruptFrame("CovertSYS start marker missing")
    return _exact_unframe(decode_binary(text[start + 1:end]))


# -- StegCloak ---------------------------------------------------------------

def embed_stegcloak(cover, payload) -> StegoText:
    cover = as_cover(cover)
    bits = frame_payload(payload)
    at = cover.text.find(" ")
    if at < 0:
        raise NoInsertionPoint("StegCloak needs at least one space in the cover")
    at += 1
    run = encode_quaternary(bits)
    text = cover.text[:at] + run + cover.text[at:]
    return StegoText(text, SchemeId.STEGCLOAK, len(bits), ((at, at + len(run)),))


def extract_stegcloak(text: str):
    m = _QUAT_RUN.search(text)
    if m is None:
        raise NoWatermarkFound("no zero-width run")
    return _exact_unframe(decode_quaternary(m.group()))
