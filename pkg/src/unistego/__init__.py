"""Invisible Unicode text watermarks: ten format-based schemes, a detector and an LLM probe harness."""

from .core import (
    BitString,
    CapacityEstimate,
    CoverText,
    Payload,
    SchemeId,
    StegoText,
    reference_cover,
    bits_to_bytes,
    bytes_to_bits,
    frame_payload,
    unframe_payload,
)
from .schemes import EmbedOptions, capacity, embed, extract

__all__ = [
    "BitString",
    "CapacityEstimate",
    "CoverText",
    "EmbedOptions",
    "Payload",
    "SchemeId",
    "StegoText",
    "reference_cover",
    "bits_to_bytes",
    "bytes_to_bits",
    "capacity",
    "embed",
    "extract",
    "frame_payload",
    "unframe_payload",
]
