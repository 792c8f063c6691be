import pytest

from unistego import EmbedOptions, SchemeId, reference_cover, embed
from unistego.core import read_data

PAYLOAD = "Secret Message"
OPTIONS = EmbedOptions(timestamp=0)


def frame_oracle(payload: bytes) -> str:
    """Length-prefixed bit string built with plain int/format, independent of the codec."""
    raw = len(payload).to_bytes(2, "big") + payload
    return "".join(format(b, "08b") for b in raw)


def tsv_codepoints(name: str) -> list[list[str]]:
    """Rows of a bundled TSV with every U+XXXX field decoded, comments dropped."""
    rows = []
    for line in read_data(name).splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append(["".join(chr(int(t[2:], 16)) for t in f.split()) if f.startswith("U+") else f
                     for f in line.split("\t")])
    return rows


@pytest.fixture(scope="session")
def cover():
    return reference_cover()


@pytest.fixture(scope="session")
def stegos(cover):
    return {s: embed(s, cover, PAYLOAD, OPTIONS) for s in SchemeId}


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
