"""Domain types, the bit codec and the length-prefixed payload frame.

Every scheme encodes the same thing: a 16-bit big-endian byte count followed
by the UTF-8 payload, MSB first.  The scheme-specific modules only decide
which characters carry those bits.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import cached_property
from importlib import resources

from .errors import CorruptFrame, NonOctetLength, PayloadTooLarge, TruncatedFrame

HEADER_BITS = 16
MAX_PAYLOAD_BYTES = 0xFFFF
UNLIMITED = math.inf


class SchemeId(str, enum.Enum):
    AITSTEG = "aitsteg"
    COVERTSYS = "covertsys"
    INNAMARK = "innamark"
    LOOKALIKES = "lookalikes"
    RIZZO = "rizzo"
    SHAZZAD = "shazzad"
    SHIU = "shiu"
    SNOW = "snow"
    STEGCLOAK = "stegcloak"
    UNISPACH = "unispach"

    def __str__(self) -> str:
        return self.value


# Display names as used in result tables.
DISPLAY_NAMES = {
    SchemeId.AITSTEG: "AITSteg",
    SchemeId.COVERTSYS: "CovertSYS",
    SchemeId.INNAMARK: "Innamark",
    SchemeId.LOOKALIKES: "LookALikes",
    SchemeId.RIZZO: "Rizzo",
    SchemeId.SHAZZAD: "Sh.-Ur-Ra.",
    SchemeId.SHIU: "Shiu",
    SchemeId.SNOW: "SNOW",
    SchemeId.STEGCLOAK: "StegCloak",
    SchemeId.UNISPACH: "UniSpaCh",
}

_BLANK_LINE = re.compile(r"\n[^\S\n]*\n")


@dataclass(frozen=True)
class CoverText:
    text: str

    def __post_init__(self):
        if not isinstance(self.text, str):
            raise TypeError("cover text must be str")
        if any(0xD800 <= ord(ch) <= 0xDFFF for ch in self.text):
            raise ValueError("cover text contains unpaired surrogates")

    @property
    def char_count(self) -> int:
        return len(self.text)

    @property
    def space_count(self) -> int:
        return self.text.count(" ")

    @property
    def line_count(self) -> int:
        return len(self.text.splitlines())

    @property
    def paragraph_count(self) -> int:
        return len(paragraph_ends(self.text))


@dataclass(frozen=True)
class Payload:
    data: bytes

    def __post_init__(self):
        # payloads are watermark *text*; invalid UTF-8 cannot be represented
        try:
            self.data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ValueError(f"payload is not valid UTF-8: {exc}") from None

    @classmethod
    def from_text(cls, text: str) -> "Payload":
        return cls(text.encode("utf-8"))

    @property
    def as_text(self) -> str:
        return self.data.decode("utf-8")

    def __len__(self) -> int:
        return len(self.data)


@dataclass(frozen=True)
class BitString:
    """Immutable run of bits held as a '0'/'1' string."""

    bits: str = ""

    def __post_init__(self):
        if self.bits.strip("01"):
            raise ValueError(f"invalid bit characters in {self.bits[:32]!r}")

    @classmethod
    def from_int(cls, value: int, width: int) -> "BitString":
        if value < 0 or value >= 1 << width:
            raise ValueError(f"{value} does not fit in {width} bits")
        return cls(format(value, f"0{width}b") if width else "")

    def to_int(self) -> int:
        return int(self.bits, 2) if self.bits else 0

    def __len__(self) -> int:
        return len(self.bits)

    def __add__(self, other: "BitString") -> "BitString":
        return BitString(self.bits + other.bits)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return BitString(self.bits[index])
        return int(self.bits[index])

    def __iter__(self):
        return (int(b) for b in self.bits)

    def __str__(self) -> str:
        return self.bits

    def chunks(self, size: int) -> list[int]:
        """Split into `size`-bit integers; the last chunk is zero-padded."""
        padded = self.bits + "0" * (-len(self.bits) % size)
        return [int(padded[i:i + size], 2) for i in range(0, len(padded), size)]

    @classmethod
    def from_chunks(cls, values, size: int) -> "BitString":
        return cls("".join(format(v, f"0{size}b") for v in values))


@dataclass(frozen=True)
class StegoText:
    text: str
    scheme: SchemeId
    embedded_bits: int
    insertion_spans: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last_end = 0
        for start, end in sorted(self.insertion_spans):
            if not (0 <= start <= end <= len(self.text)):
                raise ValueError(f"span {(start, end)} outside text of length {len(self.text)}")
            if start < last_end:
                raise ValueError("insertion spans overlap")
            last_end = end


@dataclass(frozen=True)
class CapacityEstimate:
    scheme: SchemeId
    max_payload_bits: float  # carrier bits including the frame header; UNLIMITED for append schemes
    limiting_resource: str
    filler_bits: int = 0  # part of max_payload_bits that lives in paragraph fillers

    @property
    def unlimited(self) -> bool:
        return self.max_payload_bits == UNLIMITED

    def fits(self, n_bits: int) -> bool:
        return n_bits <= self.max_payload_bits

    @property
    def max_message_bytes(self) -> float:
        if self.unlimited:
            return MAX_PAYLOAD_BYTES
        return max(0, (int(self.max_payload_bits) - HEADER_BITS) // 8)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "max_payload_bits": "unlimited" if self.unlimited else int(self.max_payload_bits),
            "limiting_resource": self.limiting_resource,
            "filler_bits": self.filler_bits,
        }


def as_cover(cover) -> CoverText:
    return cover if isinstance(cover, CoverText) else CoverText(cover)


def as_payload(payload) -> Payload:
    if isinstance(payload, Payload):
        return payload
    if isinstance(payload, bytes):
        return Payload(payload)
    return Payload.from_text(payload)


def bytes_to_bits(payload) -> BitString:
    data = as_payload(payload).data
    return BitString("".join(format(b, "08b") for b in data))


def bits_to_bytes(bits: BitString) -> Payload:
    if len(bits) % 8:
        raise NonOctetLength(f"{len(bits)} bits is not a whole number of bytes")
    s = bits.bits
    return Payload(bytes(int(s[i:i + 8], 2) for i in range(0, len(s), 8)))


def frame_payload(payload) -> BitString:
    payload = as_payload(payload)
    if len(payload) > MAX_PAYLOAD_BYTES:
        raise PayloadTooLarge(f"{len(payload)} bytes exceeds the {MAX_PAYLOAD_BYTES}-byte frame limit")
    return BitString.from_int(len(payload), HEADER_BITS) + bytes_to_bits(payload)


def framed_length(payload) -> int:
    """Number of carrier bits `frame_payload` produces for `payload`."""
    return HEADER_BITS + 8 * len(as_payload(payload))


def frame_header(bits: BitString) -> int:
    if len(bits) < HEADER_BITS:
        raise TruncatedFrame(f"need {HEADER_BITS} header bits, got {len(bits)}")
    return bits[:HEADER_BITS].to_int()


def unframe_payload(bits: BitString) -> Payload:
    n_bytes = frame_header(bits)
    body = bits[HEADER_BITS:HEADER_BITS + 8 * n_bytes]
    if len(body) < 8 * n_bytes:
        raise TruncatedFrame(f"header declares {n_bytes} bytes, only {len(body)} bits present")
    try:
        return bits_to_bytes(body)
    except ValueError as exc:
        raise CorruptFrame(str(exc)) from None


def paragraph_ends(text: str) -> list[int]:
    """Index just past the last non-whitespace character of each paragraph.

    Paragraphs are separated by lines that are empty or whitespace-only;
    paragraphs without visible content are skipped.
    """
    ends = []
    start = 0
    for sep in [*_BLANK_LINE.finditer(text), None]:
        stop = sep.start() if sep else len(text)
        block = text[start:stop]
        stripped = block.rstrip()
        if stripped:
            ends.append(start + len(stripped))
        if sep:
            # the closing newline of a separator may open the next separator
            start = sep.end() - 1
    return ends


def read_data(name: str) -> str:
    return resources.files("unistego.data").joinpath(name).read_text(encoding="utf-8")


def reference_cover() -> CoverText:
    """The two-paragraph Lorem ipsum cover used in all three experiments."""
    return CoverText(read_data("reference_cover.txt"))


def visible_char_count(text: str) -> int:
    """Characters excluding line terminators (how word processors count the cover)."""
    return sum(1 for ch in text if ch not in "\r\n")
