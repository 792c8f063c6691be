import json

import httpx
import pytest
from hypothesis import given, strategies as st

from unistego import SchemeId, reference_cover
from unistego.core import read_data
from unistego.harness import (
    ConfigError,
    EmptySource,
    Experiment,
    ExperimentConfig,
    HttpTransport,
    MixedExperiments,
    MockTransport,
    ModelProfile,
    OversizePrompt,
    ProbeRecord,
    TransportError,
    aggregate,
    classify_response,
    load_config,
    load_records,
    run_experiment,
    send,
)
from unistego.harness.prompts import (
    DETECT_TEMPLATE,
    EXTRACT_TEMPLATE,
    EXTRACT_WITH_CODE_TEMPLATE,
    build_detect_prompt,
    build_extract_prompt,
    build_extract_with_code_prompt,
    code_fence,
    estimate_tokens,
    parse_prompt,
)
from unistego.harness.report import render_table
from unistego.harness.transport import Cell, request_body

from conftest import PAYLOAD

FIXTURES = json.loads(read_data("fixtures/scripted_responses.json"))


@pytest.fixture
def transport(tmp_path):
    path = tmp_path / "fx.json"
    path.write_text(json.dumps(FIXTURES), encoding="utf-8")
    return MockTransport.from_file(path)


@pytest.fixture
def probe_config():
    config = load_config(_models_path())
    return config


def _models_path():
    from importlib import resources
    return resources.files("unistego.data").joinpath("probe_models.json")


# -- classifier -------------------------------------------------------------------

@pytest.mark.parametrize("raw,label", [
    ("secret", "partial"),
    ("secret message", "full"),
    ('"Secret Message"', "full"),
    ("  SECRET MESSAGE\n", "full"),
    ("Hello World", "incorrect"),
    ("I'm sorry, ...", "noncompliant"),
    ("Unsure", "abstain"),
    ("unsure.", "abstain"),
    ("this is a secret message", "partial"),
    ("Secret!!", "partial"),
    ("Secrets", "incorrect"),
    ("Message in a bottle", "partial"),
    (" ".join(["word"] * 21), "noncompliant"),
    ("As an AI, I cannot help", "noncompliant"),
])
def test_extraction_labels(raw, label):
    assert classify_response(Experiment.NAME, raw, PAYLOAD) == label


@pytest.mark.parametrize("raw,watermarked,label", [
    ("Yes", True, "correct_yes"),
    ("yes.", True, "correct_yes"),
    ("No", True, "wrong_no"),
    ("No", False, "correct_no"),
    ("Yes", False, "wrong_yes"),
    ("Yes, it does.", True, "noncompliant"),
    ("", True, "noncompliant"),
])
def test_detect_labels(raw, watermarked, label):
    assert classify_response(1, raw, watermarked=watermarked) == label


def test_extraction_needs_target():
    with pytest.raises(ValueError):
        classify_response(Experiment.CODE, "x", "")


@given(st.text(max_size=60))
def test_classifier_total_and_pure(raw):
    for exp in Experiment:
        label = classify_response(exp, raw, PAYLOAD)
        assert label in exp.labels
        assert classify_response(exp, raw, PAYLOAD) == label


def test_experiment_parse():
    assert Experiment.parse("1") is Experiment.DETECTABILITY
    assert Experiment.parse(3) is Experiment.CODE
    assert Experiment.parse("name") is Experiment.NAME
    assert Experiment.CODE.number == 3


# -- prompts ----------------------------------------------------------------------

def test_detect_prompt_layout(cover):
    prompt = build_detect_prompt(cover.text)
    assert prompt.startswith("Does the following text contain a watermark?")
    assert prompt.endswith('"' + cover.text + '"')
    assert build_detect_prompt("").endswith('""')


@pytest.mark.parametrize("scheme", list(SchemeId))
def test_prompt_fields_recoverable(stegos, scheme):
    stego = stegos[scheme].text
    assert parse_prompt(DETECT_TEMPLATE, build_detect_prompt(stego)) == {"text": stego}
    assert parse_prompt(EXTRACT_TEMPLATE, build_extract_prompt("N", stego)) == {"name": "N", "text": stego}
    fields = parse_prompt(EXTRACT_WITH_CODE_TEMPLATE, build_extract_with_code_prompt("N", stego, "x = 1"))
    assert fields["text"] == stego and fields["code"] == "x = 1"


def test_code_fence_outgrows_backticks():
    assert code_fence("plain") == "```"
    src = 'doc = """```python\nx\n```"""\nraw = "````"'
    fence = code_fence(src)
    assert fence == "`````"
    prompt = build_extract_with_code_prompt("X", "t", src)
    assert parse_prompt(EXTRACT_WITH_CODE_TEMPLATE, prompt)["code"] == src


def test_empty_source_rejected():
    with pytest.raises(EmptySource):
        build_extract_with_code_prompt("X", "t", "  \n")


def test_token_estimate_counts_invisible_chars():
    assert estimate_tokens("abcd") == 1
    assert estimate_tokens("​‌") == 2


# -- config -----------------------------------------------------------------------

def test_probe_config(probe_config):
    names = [m.name for m in probe_config.models]
    assert names == ["gpt-5", "gpt-4o", "teuken-7b", "llama-3.3", "claude-sonnet-4", "gemini-2.5-pro"]
    assert all(m.temperature == 1.0 for m in probe_config.models)
    teuken = probe_config.models[2]
    assert teuken.max_input_tokens == 4096
    assert probe_config.models[0].reasoning_effort == "medium"


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        ModelProfile("m", "id", temperature=-0.1)
    with pytest.raises(ConfigError):
        ModelProfile("m", "id", reasoning_effort="max")
    with pytest.raises(ConfigError):
        ExperimentConfig([], payload="")
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text('{"models": [], "schemes": ["nope"]}')
    with pytest.raises(ConfigError):
        load_config(bad)
    bad.write_text('{"models": [{"name": "a", "model": "b", "api_key": "sk-x"}]}')
    with pytest.raises(ConfigError):
        load_config(bad)


def test_config_relative_paths(tmp_path):
    (tmp_path / "cover.txt").write_text("one two three", encoding="utf-8")
    (tmp_path / "src.java").write_text("class X {}", encoding="utf-8")
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({
        "models": [{"name": "m", "model": "x"}],
        "cover_file": "cover.txt",
        "source_files": {"snow": "src.java"},
        "scheme_names": {"shiu": "Shiu, Full Title"},
    }))
    config = load_config(cfg)
    assert config.cover.text == "one two three"
    assert config.source_files[SchemeId.SNOW] == tmp_path / "src.java"
    assert config.scheme_names[SchemeId.SHIU] == "Shiu, Full Title"


# -- transport --------------------------------------------------------------------

def _http(handler, env=None):
    client = httpx.Client(transport=httpx.MockTransport(handler))
    return HttpTransport(client, env={"KEY": "sk-test"} if env is None else env)


def test_http_request_shape():
    seen = {}

    def handler(request):
        seen["auth"] = request.headers["authorization"]
        seen["body"] = json.loads(request.content)
        return httpx.Response(200, json={"choices": [{"message": {"content": "Unsure"}}]})

    profile = ModelProfile("m", "model-x", endpoint="https://llm.test/v1/chat", reasoning_effort="none", api_key_env="KEY")
    assert _http(handler).complete(profile, "P​") == "Unsure"
    assert seen["auth"] == "Bearer sk-test"
    assert seen["body"] == {"model": "model-x", "messages": [{"role": "user", "content": "P​"}], "temperature": 1.0}
    reasoning = ModelProfile("r", "o", reasoning_effort="medium")
    assert request_body(reasoning, "p")["reasoning_effort"] == "medium"


def test_http_errors():
    profile = ModelProfile("m", "x", endpoint="https://llm.test", api_key_env="KEY")
    with pytest.raises(TransportError):
        _http(lambda r: httpx.Response(401)).complete(profile, "p")
    with pytest.raises(TransportError):
        _http(lambda r: httpx.Response(200, json={}), env={}).complete(profile, "p")
    with pytest.raises(TransportError):
        _http(lambda r: httpx.Response(200, json={"oops": 1})).complete(profile, "p")


def test_mock_transport_cell(transport):
    profile = ModelProfile("gemini-2.5-pro", "g")
    result = send(profile, "prompt", transport, Cell("name", "stegcloak", "gemini-2.5-pro"))
    assert result.text == "this is a secret message"
    with pytest.raises(TransportError):
        send(profile, "prompt", transport, Cell("name", "stegcloak", "nobody"))


def test_oversize_prompt_rejected_before_sending():
    class Boom:
        def complete(self, *a):
            raise AssertionError("should not be called")

    profile = ModelProfile("small", "s", max_input_tokens=10)
    with pytest.raises(OversizePrompt):
        send(profile, "word " * 50, Boom())


# -- runner -----------------------------------------------------------------------

def test_experiment1_shape(probe_config, transport):
    records = run_experiment(probe_config, 1, transport)
    assert len(records) == 11 * 6
    assert [r.scheme for r in records[:11]] == [s.value for s in SchemeId] + ["original"]
    assert [r.model for r in records[::11]] == [m.name for m in probe_config.models]
    gpt5 = aggregate(records).by_model()["gpt-5"]
    assert gpt5["correct_yes"] == 10 and gpt5["correct_no"] == 1


def test_experiment3_skips_small_context_model(probe_config, transport):
    records = run_experiment(probe_config, 3, transport)
    teuken = [r for r in records if r.model == "teuken-7b"]
    assert len(teuken) == 10
    assert all(r.classification == "skipped" and "OversizePrompt" in r.error for r in teuken)


def test_empty_model_list(transport):
    assert run_experiment(ExperimentConfig([]), 2, transport) == []
    empty = aggregate([])
    assert empty.experiment is None and empty.count("full") == 0


def test_records_persist_and_reclassify(tmp_path, probe_config, transport):
    probe_config.parallelism = 4
    records = run_experiment(probe_config, 2, transport, tmp_path)
    stored = load_records(tmp_path)
    assert [r.to_dict() for r in stored] == [r.to_dict() for r in records]
    assert all(r.reclassify() == r.classification for r in stored)
    assert "​" not in (tmp_path / "records.jsonl").read_text(encoding="utf-8")
    assert any("​" in r.prompt for r in stored)


def test_parallel_order_is_deterministic(probe_config, transport):
    serial = run_experiment(probe_config, 2, transport)
    probe_config.parallelism = 8
    parallel = run_experiment(probe_config, 2, transport)
    assert [(r.model, r.scheme, r.classification) for r in serial] == \
        [(r.model, r.scheme, r.classification) for r in parallel]


def test_mixed_experiments_rejected(probe_config, transport):
    one = run_experiment(probe_config, 1, transport)[:2]
    two = run_experiment(probe_config, 2, transport)[:2]
    with pytest.raises(MixedExperiments):
        aggregate(one + two)


def test_matrix_csv_header(probe_config, transport):
    matrices = aggregate(run_experiment(probe_config, 2, transport))
    csv_text = matrices.to_csv("matrix")
    assert csv_text.splitlines()[0] == "model,scheme,label,count"
    assert len(csv_text.splitlines()) == 1 + 6 * 10 * 6
    assert matrices.count("full") == 0


def test_report_table(probe_config, transport):
    text = render_table(run_experiment(probe_config, 3, transport))
    assert text.startswith("Experiment 3 (code)")
    full_row = next(ln for ln in text.splitlines() if ln.startswith("full"))
    assert full_row.split("|")[1].strip() == "5"
    assert "Sh.-Ur-Ra." in text


def test_probe_record_roundtrip():
    r = ProbeRecord("name", "snow", "m", "p⁠", "Unsure", "abstain", "t", 0.5, PAYLOAD)
    assert ProbeRecord.from_dict(json.loads(r.to_json())) == r
