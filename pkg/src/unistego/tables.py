"""Loaders for the bundled confusable tables and space alphabets.

Data files are UTF-8, one mapping per line, tab separated, with every
character written as ``U+XXXX`` so invisible codepoints stay reviewable.
``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import read_data
from .errors import TableError

LOOKALIKES_SIZE = 23
RIZZO_CLASS_SIZES = {"symbol": 2, "letter": 14, "whitespace": 8}
SPACES64_SIZE = 64
SPACES16_SIZE = 16


def parse_codepoints(field: str) -> str:
    try:
        return "".join(chr(int(tok.removeprefix("U+"), 16)) for tok in field.split())
    except ValueError:
        raise TableError(f"bad codepoint field {field!r}") from None


def _rows(name: str):
    for lineno, raw in enumerate(read_data(name).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split("\t")


@dataclass(frozen=True)
class ConfusableTable:
    name: str
    entries: tuple[tuple[str, str], ...]
    classes: tuple[str, ...]

    def __post_init__(self):
        originals = [o for o, _ in self.entries]
        variants = [v for _, v in self.entries]
        if len(set(originals)) != len(originals):
            raise TableError(f"{self.name}: duplicate originals")
        if len(set(variants)) != len(variants):
            raise TableError(f"{self.name}: duplicate variants")
        if set(originals) & set(variants):
            raise TableError(f"{self.name}: a variant is also an original")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def to_variant(self) -> dict[str, str]:
        return dict(self.entries)

    @property
    def to_original(self) -> dict[str, str]:
        return {v: o for o, v in self.entries}

    def count(self, cls: str) -> int:
        return self.classes.count(cls)

    def skeleton(self, text: str) -> str:
        back = self.to_original
        return "".join(back.get(ch, ch) for ch in text)


@lru_cache(maxsize=None)
def load_confusables(name: str) -> ConfusableTable:
    entries, classes = [], []
    for lineno, fields in _rows(f"{name}.tsv"):
        if len(fields) < 3:
            raise TableError(f"{name}.tsv:{lineno}: expected original, variant, class")
        orig, var = parse_codepoints(fields[0]), parse_codepoints(fields[1])
        if len(orig) != 1 or len(var) != 1:
            raise TableError(f"{name}.tsv:{lineno}: substitutions must be single codepoints")
        entries.append((orig, var))
        classes.append(fields[2])
    return ConfusableTable(name, tuple(entries), tuple(classes))


@lru_cache(maxsize=None)
def load_space_alphabet(name: str) -> tuple[str, ...]:
    symbols = {}
    for lineno, fields in _rows(f"{name}.tsv"):
        value, token = int(fields[0]), parse_codepoints(fields[1])
        if value in symbols:
            raise TableError(f"{name}.tsv:{lineno}: value {value} listed twice")
        symbols[value] = token
    alphabet = tuple(symbols[i] for i in sorted(symbols))
    if sorted(symbols) != list(range(len(alphabet))):
        raise TableError(f"{name}.tsv: values must be 0..n-1")
    if len(set(alphabet)) != len(alphabet):
        raise TableError(f"{name}.tsv: duplicate symbols")
    if alphabet and alphabet[0] != " ":
        raise TableError(f"{name}.tsv: value 0 must be U+0020")
    return alphabet


def lookalikes_table() -> ConfusableTable:
    table = load_confusables("lookalikes")
    if len(table) != LOOKALIKES_SIZE:
        raise TableError(f"lookalikes table has {len(table)} entries, expected {LOOKALIKES_SIZE}")
    return table


def rizzo_table() -> ConfusableTable:
    table = load_confusables("rizzo")
    for cls, size in RIZZO_CLASS_SIZES.items():
        if table.count(cls) != size:
            raise TableError(f"rizzo table has {table.count(cls)} {cls} entries, expected {size}")
    if len(table) != sum(RIZZO_CLASS_SIZES.values()):
        raise TableError("rizzo table has entries of unknown class")
    return table


def space_alphabet64() -> tuple[str, ...]:
    alphabet = load_space_alphabet("spaces64")
    if len(alphabet) != SPACES64_SIZE:
        raise TableError(f"64-symbol alphabet has {len(alphabet)} entries")
    return alphabet


def space_alphabet16() -> tuple[str, ...]:
    alphabet = load_space_alphabet("spaces16")
    if len(alphabet) != SPACES16_SIZE:
        raise TableError(f"16-symbol alphabet has {len(alphabet)} entries")
    if not set(alphabet) <= set(space_alphabet64()):
        raise TableError("16-symbol alphabet must be a subset of the 64-symbol one")
    return alphabet
