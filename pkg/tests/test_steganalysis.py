import json
import re

import pytest
from hypothesis import given, strategies as st

from unistego import SchemeId
from unistego.errors import NotWatermarked
from unistego.steganalysis import attribute, census, scan


def test_cover_is_clean(cover):
    report = scan(cover.text)
    assert report.verdict == "clean"
    assert report.attributions == []
    with pytest.raises(NotWatermarked):
        attribute(report)


@pytest.mark.parametrize("scheme", list(SchemeId))
def test_stego_is_flagged_and_attributed(stegos, scheme):
    report = scan(stegos[scheme].text)
    assert report.watermarked
    ranked = attribute(report)
    assert ranked[0][0] is scheme


def test_census_counts(stegos):
    assert census(stegos[SchemeId.COVERTSYS].text).zero_width_count == 130
    assert census(stegos[SchemeId.STEGCLOAK].text).zero_width_count == 64
    assert census(stegos[SchemeId.UNISPACH].text).small_space_pairs == 64
    c = census(stegos[SchemeId.SNOW].text)
    assert c.trailing_ws_lines == 1
    assert census(stegos[SchemeId.SHIU].text).wrapped_signature


def test_unused_homoglyphs_still_flagged():
    assert scan("The \u0397ello world").watermarked  # Greek capital eta


def test_report_json_is_stable(stegos):
    data = json.loads(scan(stegos[SchemeId.INNAMARK].text).to_json())
    assert list(data) == ["verdict", "census", "attributions"]
    assert isinstance(data["census"]["exotic_space_count"], int)
    assert {a["scheme"] for a in data["attributions"]} == {s.value for s in SchemeId}


@given(st.text(st.sampled_from("abc XYZ,.;\n"), max_size=200).map(lambda t: re.sub(r" +(?=\n|$)", "", t)))
def test_plain_ascii_prose_is_clean(text):
    report = scan(text)
    assert report.watermarked == census(text).wrapped_signature
