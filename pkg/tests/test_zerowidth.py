import pytest
from hypothesis import given, strategies as st

from unistego import zerowidth as zw
from unistego.errors import CorruptFrame, NoInsertionPoint, NoWatermarkFound, TruncatedFrame

from conftest import PAYLOAD, frame_oracle

BIN = {"0": "\u200b", "1": "\u200c"}
QUAT = ["\u200b", "\u200c", "\u200d", "\u2060"]

words = st.text(st.sampled_from("abc XYZ.\n"), max_size=80)
payloads = st.text(st.characters(blacklist_categories=("Cs",)), max_size=24)


def test_covertsys_matches_oracle(cover):
    bits = frame_oracle(PAYLOAD.encode())
    expected = cover.text + "\u200d" + "".join(BIN[b] for b in bits) + "\u2060"
    assert zw.embed_covertsys(cover, PAYLOAD).text == expected


def test_aitsteg_matches_oracle(cover):
    ts = 1_700_000_000
    bits = format(ts, "032b") + format(14, "016b") + "".join(format(b, "08b") for b in PAYLOAD.encode())
    expected = "\u200d" + "".join(BIN[b] for b in bits) + "\u2060" + cover.text
    stego = zw.embed_aitsteg(cover, PAYLOAD, timestamp=ts)
    assert stego.text == expected
    header, _ = zw.read_aitsteg_header(stego.text)
    assert header.timestamp == ts and header.length == 14


def test_stegcloak_matches_oracle(cover):
    bits = frame_oracle(PAYLOAD.encode())
    run = "".join(QUAT[int(bits[i:i + 2], 2)] for i in range(0, len(bits), 2))
    at = cover.text.index(" ") + 1
    assert zw.embed_stegcloak(cover, PAYLOAD).text == cover.text[:at] + run + cover.text[at:]
    assert len(run) == 64


@pytest.mark.parametrize("codec", ["aitsteg", "covertsys", "stegcloak"])
@given(cover=words, payload=payloads)
def test_roundtrip_and_strip(codec, cover, payload):
    if codec == "stegcloak" and " " not in cover:
        with pytest.raises(NoInsertionPoint):
            zw.embed_stegcloak(cover, payload)
        return
    embed = getattr(zw, f"embed_{codec}")
    extract = getattr(zw, f"extract_{codec}")
    stego = embed(cover, payload, timestamp=0) if codec == "aitsteg" else embed(cover, payload)
    assert extract(stego.text).as_text == payload
    assert zw.strip_zero_width(stego.text) == cover


def test_clean_text_has_no_watermark(cover):
    for extract in (zw.extract_aitsteg, zw.extract_covertsys, zw.extract_stegcloak):
        with pytest.raises(NoWatermarkFound):
            extract(cover.text)


def test_truncated_runs_are_corrupt(cover):
    stego = zw.embed_covertsys(cover, PAYLOAD).text
    with pytest.raises(CorruptFrame):
        zw.extract_covertsys(stego[:-3] + stego[-1])
    ait = zw.embed_aitsteg(cover, PAYLOAD, timestamp=0).text
    with pytest.raises(CorruptFrame):
        zw.extract_aitsteg(ait[:40] + ait[41:])
    with pytest.raises(TruncatedFrame):
        zw.extract_aitsteg("\u200d" + "\u200b" * 10 + "\u2060")


def test_foreign_char_in_binary_run():
    with pytest.raises(CorruptFrame):
        zw.decode_binary("\u200b\u200dx")


def test_stegcloak_extra_symbols_are_corrupt(cover):
    stego = zw.embed_stegcloak(cover, PAYLOAD).text
    at = cover.text.index(" ") + 1
    with pytest.raises(CorruptFrame):
        zw.extract_stegcloak(stego[:at] + "\u200b" + stego[at:])
