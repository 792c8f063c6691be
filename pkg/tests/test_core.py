import pytest
from hypothesis import given, strategies as st

from unistego.core import (
    BitString,
    CapacityEstimate,
    CoverText,
    Payload,
    SchemeId,
    StegoText,
    UNLIMITED,
    reference_cover,
    bits_to_bytes,
    bytes_to_bits,
    frame_header,
    frame_payload,
    framed_length,
    paragraph_ends,
    unframe_payload,
    visible_char_count,
)
from unistego.errors import CorruptFrame, NonOctetLength, PayloadTooLarge, TruncatedFrame

from conftest import frame_oracle

utf8_text = st.text(st.characters(blacklist_categories=("Cs",)), max_size=64)


def test_secret_message_frame_matches_oracle():
    bits = frame_payload("Secret Message")
    assert len(bits) == 128
    assert bits.bits == frame_oracle(b"Secret Message")
    assert frame_header(bits) == 14


def test_empty_payload_frame_is_header_only():
    assert frame_payload("").bits == "0" * 16


def test_oversize_payload_rejected():
    with pytest.raises(PayloadTooLarge):
        frame_payload(b"x" * 0x10000)


@given(utf8_text)
def test_frame_roundtrip(text):
    payload = Payload.from_text(text)
    bits = frame_payload(payload)
    assert len(bits) == framed_length(payload) == 16 + 8 * len(payload)
    assert unframe_payload(bits) == payload
    assert bits.bits == frame_oracle(payload.data)


@given(utf8_text, st.text("01", max_size=20))
def test_unframe_ignores_slack(text, slack):
    bits = frame_payload(text)
    assert unframe_payload(bits + BitString(slack)).as_text == text


def test_truncated_frame():
    bits = frame_payload("Secret Message")
    with pytest.raises(TruncatedFrame):
        unframe_payload(bits[:-1])
    with pytest.raises(TruncatedFrame):
        unframe_payload(BitString("0101"))


def test_invalid_utf8_body_is_corrupt():
    bits = BitString.from_int(1, 16) + BitString("11111111")
    with pytest.raises(CorruptFrame):
        unframe_payload(bits)


def test_non_octet_bits():
    with pytest.raises(NonOctetLength):
        bits_to_bytes(BitString("101"))


@given(utf8_text)
def test_bytes_bits_inverse(text):
    data = text.encode("utf-8")
    assert bytes_to_bits(data).bits == "".join(format(b, "08b") for b in data)
    assert bits_to_bytes(bytes_to_bits(data)).data == data


@given(st.integers(0, 2**12 - 1))
def test_bitstring_int_and_chunks(value):
    b = BitString.from_int(value, 12)
    assert b.to_int() == value
    for size in (2, 4, 6):
        assert BitString.from_chunks(b.chunks(size), size).bits[:12] == b.bits


def test_bitstring_rejects_garbage():
    with pytest.raises(ValueError):
        BitString("012")
    with pytest.raises(ValueError):
        BitString.from_int(4, 2)


def test_payload_must_be_utf8():
    with pytest.raises(ValueError):
        Payload(b"\xff")


def test_cover_rejects_surrogates():
    with pytest.raises(ValueError):
        CoverText("a\ud800")


def test_reference_cover_counts():
    cover = reference_cover()
    assert cover.paragraph_count == 2
    assert cover.char_count == 1330
    assert visible_char_count(cover.text) == 1328
    assert cover.text.startswith("Lorem ipsum dolor sit amet")
    assert not cover.text.endswith("\n")


def test_paragraph_ends():
    text = "ab cd\n\nef  \n \n\ngh"
    assert [text[:e][-2:] for e in paragraph_ends(text)] == ["cd", "ef", "gh"]
    assert paragraph_ends("") == []


def test_stegotext_span_validation():
    StegoText("abc", SchemeId.SNOW, 0, ((0, 1), (1, 3)))
    with pytest.raises(ValueError):
        StegoText("abc", SchemeId.SNOW, 0, ((0, 2), (1, 3)))
    with pytest.raises(ValueError):
        StegoText("abc", SchemeId.SNOW, 0, ((2, 5),))


def test_capacity_estimate():
    unlimited = CapacityEstimate(SchemeId.SNOW, UNLIMITED, "unbounded-append")
    assert unlimited.unlimited and unlimited.fits(10**9)
    assert unlimited.to_dict()["max_payload_bits"] == "unlimited"
    finite = CapacityEstimate(SchemeId.INNAMARK, 128, "whitespaces")
    assert finite.fits(128) and not finite.fits(129)
    assert finite.max_message_bytes == 14
