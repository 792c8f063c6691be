"""Prompt builders for the three probe experiments.

Templates are reproduced character for character; the watermarked text is
inserted untouched (no Unicode normalisation, no stripping) so every
zero-width or homoglyph carrier reaches the model.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

from ..core import SchemeId
from .errors import EmptySource

DETECT_TEMPLATE = (
    'Does the following text contain a watermark? Please only answer with "Yes" or "No".\n'
    "\n"
    '"{text}"'
)

_ANSWER_RULE = (
    'Please only answer with the extracted watermark or the word "Unsure" '
    "if you are not able to extract the watermark."
)

EXTRACT_TEMPLATE = (
    'Below you will find a watermarked text using the "{name}" watermarking implementation. '
    "Please extract the hidden watermark from the given watermarked text. "
    + _ANSWER_RULE
    + "\n\n"
    '"{text}"'
)

EXTRACT_WITH_CODE_TEMPLATE = (
    'Below you will find the code of our "{name}" watermarking implementation. '
    "Please use this knowledge to extract the hidden watermark from the given watermarked text. "
    + _ANSWER_RULE
    + "\n\n"
    "The watermarked text:\n"
    '"{text}"\n'
    "\n"
    "The Java source code:\n"
    "{fence}\n"
    "{code}\n"
    "{fence}"
)

# Names used in the extraction prompts.  Schemes without a product name are
# referred to by first author; configs may override these with a longer
# citation.
PROMPT_NAMES = {
    SchemeId.AITSTEG: "AITSteg",
    SchemeId.COVERTSYS: "CovertSYS",
    SchemeId.INNAMARK: "Innamark",
    SchemeId.LOOKALIKES: "LookALikes",
    SchemeId.RIZZO: "Rizzo et al.",
    SchemeId.SHAZZAD: "Shazzad-Ur-Rahman et al.",
    SchemeId.SHIU: "Shiu et al.",
    SchemeId.SNOW: "SNOW",
    SchemeId.STEGCLOAK: "StegCloak",
    SchemeId.UNISPACH: "UniSpaCh",
}

_SOURCE_MODULES = {
    "zerowidth": (SchemeId.AITSTEG, SchemeId.COVERTSYS, SchemeId.STEGCLOAK),
    "substitution": (SchemeId.LOOKALIKES, SchemeId.RIZZO, SchemeId.SHAZZAD),
    "whitespace": (SchemeId.INNAMARK, SchemeId.SHIU, SchemeId.SNOW, SchemeId.UNISPACH),
}

_TOKEN = re.compile(r"[A-Za-z0-9_]{1,4}|\s+|[^\sA-Za-z0-9_]")


def build_detect_prompt(text: str) -> str:
    return DETECT_TEMPLATE.format(text=text)


def build_extract_prompt(scheme_name: str, stego: str) -> str:
    return EXTRACT_TEMPLATE.format(name=scheme_name, text=stego)


def code_fence(source: str) -> str:
    """Triple backticks, lengthened past any backtick run inside the code."""
    longest = max((len(m) for m in re.findall(r"`+", source)), default=0)
    return "`" * max(3, longest + 1)


def build_extract_with_code_prompt(scheme_name: str, stego: str, source_code: str) -> str:
    if not source_code.strip():
        raise EmptySource("source code for the code-assisted prompt is empty")
    return EXTRACT_WITH_CODE_TEMPLATE.format(
        name=scheme_name, text=stego, code=source_code, fence=code_fence(source_code)
    )


def _split_template(template: str) -> tuple[list[str], list[str]]:
    parts = re.split(r"\{(\w+)\}", template)
    return parts[0::2], parts[1::2]


def parse_prompt(template: str, prompt: str) -> dict[str, str]:
    """Recover the substituted fields of a rendered prompt.

    Fields are matched lazily between the literal template pieces, except the
    last one which runs to its closing literal; good enough for the three
    templates above, whose fields never contain the following literal.
    """
    literals, names = _split_template(template)
    pattern = ""
    for i, lit in enumerate(literals):
        pattern += re.escape(lit)
        if i < len(names):
            name = names[i]
            group = f"(?P<{name}>`{{3,}})" if name == "fence" else f"(?P<{name}>.*)"
            if name == "fence" and name in names[:i]:
                group = "(?P=fence)"
            pattern += group
    m = re.fullmatch(pattern, prompt, flags=re.S)
    if m is None:
        raise ValueError("prompt does not match template")
    return m.groupdict()


def estimate_tokens(prompt: str) -> int:
    """Rough tokenizer-free count: short word pieces, punctuation and each non-ASCII char."""
    return len(_TOKEN.findall(prompt))


@lru_cache(maxsize=None)
def default_source(scheme: SchemeId) -> str:
    """Reference implementation shown to the model when no source file is configured."""
    family = next(mod for mod, ids in _SOURCE_MODULES.items() if SchemeId(scheme) in ids)
    pkg = resources.files("unistego")
    return "\n\n".join(pkg.joinpath(name).read_text(encoding="utf-8") for name in ("core.py", f"{family}.py"))
