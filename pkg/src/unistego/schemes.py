"""Scheme registry: uniform embed / extract / capacity over all ten schemes."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable

from . import substitution, whitespace, zerowidth
from .core import (
    UNLIMITED,
    CapacityEstimate,
    Payload,
    SchemeId,
    StegoText,
    as_cover,
    as_payload,
)
from .errors import UnknownScheme
from .substitution import eligible_positions, space_tokens
from .tables import lookalikes_table, rizzo_table, space_alphabet16, space_alphabet64


@dataclass(frozen=True)
class EmbedOptions:
    """Per-call knobs; each scheme reads only the ones it understands."""

    timestamp: int | None = None  # AITSteg header time, None = now
    wrap_width: int = whitespace.DEFAULT_WRAP_WIDTH  # Shiu line width


@dataclass(frozen=True)
class Scheme:
    id: SchemeId
    embed: Callable[..., StegoText]
    extract: Callable[..., Payload]
    capacity: Callable[[str, EmbedOptions], CapacityEstimate]
    family: str


def _unlimited(sid):
    return lambda text, opts: CapacityEstimate(sid, UNLIMITED, "unbounded-append")


def _zerowidth_insert_capacity(text, opts):
    # a single interior run: unlimited length, but only if there is a space to follow
    bits = UNLIMITED if " " in text else 0
    return CapacityEstimate(SchemeId.STEGCLOAK, bits, "unbounded-append")


def _confusable_capacity(sid, table_fn):
    return lambda text, opts: CapacityEstimate(
        sid, len(eligible_positions(text, table_fn())), "eligible-chars"
    )


def _shazzad_capacity(text, opts):
    return CapacityEstimate(SchemeId.SHAZZAD, 6 * len(space_tokens(text, space_alphabet64())), "whitespaces")


def _innamark_capacity(text, opts):
    return CapacityEstimate(SchemeId.INNAMARK, 4 * len(space_tokens(text, space_alphabet16())), "whitespaces")


def _unispach_capacity(text, opts):
    gap_bits, filler_bits = whitespace.unispach_capacity(text)
    return CapacityEstimate(SchemeId.UNISPACH, gap_bits + filler_bits, "whitespaces", filler_bits)


def _shiu_capacity(text, opts):
    return CapacityEstimate(SchemeId.SHIU, whitespace.shiu_capacity(text, opts.wrap_width), "lines")


_SCHEMES = [
    Scheme(
        SchemeId.AITSTEG,
        lambda c, p, o: zerowidth.embed_aitsteg(c, p, timestamp=o.timestamp),
        lambda t, o: zerowidth.extract_aitsteg(t),
        _unlimited(SchemeId.AITSTEG),
        "zerowidth",
    ),
    Scheme(
        SchemeId.COVERTSYS,
        lambda c, p, o: zerowidth.embed_covertsys(c, p),
        lambda t, o: zerowidth.extract_covertsys(t),
        _unlimited(SchemeId.COVERTSYS),
        "zerowidth",
    ),
    Scheme(
        SchemeId.INNAMARK,
        lambda c, p, o: whitespace.embed_innamark(c, p),
        lambda t, o: whitespace.extract_innamark(t),
        _innamark_capacity,
        "whitespace",
    ),
    Scheme(
        SchemeId.LOOKALIKES,
        lambda c, p, o: substitution.embed_lookalikes(c, p),
        lambda t, o: substitution.extract_lookalikes(t),
        _confusable_capacity(SchemeId.LOOKALIKES, lookalikes_table),
        "substitution",
    ),
    Scheme(
        SchemeId.RIZZO,
        lambda c, p, o: substitution.embed_rizzo(c, p),
        lambda t, o: substitution.extract_rizzo(t),
        _confusable_capacity(SchemeId.RIZZO, rizzo_table),
        "substitution",
    ),
    Scheme(
        SchemeId.SHAZZAD,
        lambda c, p, o: substitution.embed_shazzad(c, p),
        lambda t, o: substitution.extract_shazzad(t),
        _shazzad_capacity,
        "substitution",
    ),
    Scheme(
        SchemeId.SHIU,
        lambda c, p, o: whitespace.embed_shiu(c, p, wrap_width=o.wrap_width),
        lambda t, o: whitespace.extract_shiu(t, wrap_width=o.wrap_width),
        _shiu_capacity,
        "whitespace",
    ),
    Scheme(
        SchemeId.SNOW,
        lambda c, p, o: whitespace.embed_snow(c, p),
        lambda t, o: whitespace.extract_snow(t),
        _unlimited(SchemeId.SNOW),
        "whitespace",
    ),
    Scheme(
        SchemeId.STEGCLOAK,
        lambda c, p, o: zerowidth.embed_stegcloak(c, p),
        lambda t, o: zerowidth.extract_stegcloak(t),
        _zerowidth_insert_capacity,
        "zerowidth",
    ),
    Scheme(
        SchemeId.UNISPACH,
        lambda c, p, o: whitespace.embed_unispach(c, p),
        lambda t, o: whitespace.extract_unispach(t),
        _unispach_capacity,
        "whitespace",
    ),
]

REGISTRY = MappingProxyType({s.id: s for s in _SCHEMES})
DEFAULT_OPTIONS = EmbedOptions()


def resolve(scheme) -> Scheme:
    try:
        return REGISTRY[SchemeId(scheme)]
    except ValueError:
        raise UnknownScheme(f"unknown scheme {scheme!r}; choose from {', '.join(s.value for s in SchemeId)}") from None


def capacity(scheme, cover, options: EmbedOptions = DEFAULT_OPTIONS) -> CapacityEstimate:
    return resolve(scheme).capacity(as_cover(cover).text, options)


def embed(scheme, cover, payload, options: EmbedOptions = DEFAULT_OPTIONS) -> StegoText:
    return resolve(scheme).embed(as_cover(cover), as_payload(payload), options)


def extract(scheme, text: str, options: EmbedOptions = DEFAULT_OPTIONS) -> Payload:
    return resolve(scheme).extract(text, options)
