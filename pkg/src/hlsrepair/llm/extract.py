"""Pull the program out of a model response."""
from __future__ import annotations

import re

from ..cfront.source import SourceUnit

_FENCE = re.compile(r"```[ \t]*([A-Za-z0-9_+#-]*)[ \t]*\n(.*?)```", re.S)


class ExtractError(Exception):
    pass


def _parses(code: str) -> bool:
    return SourceUnit.from_bytes("response.c", code).ok


def extract_program(response: str) -> str:
    """The fenced block that parses (the longest, if several do).

    A response without fences is accepted only when the whole text parses.
    """
    blocks = [m.group(2) for m in _FENCE.finditer(response)]
    if not blocks:
        if response.strip() and _parses(response):
            return response
        raise ExtractError("response contains no code block")
    good = [b for b in blocks if _parses(b)]
    if not good:
        unit = SourceUnit.from_bytes("response.c", max(blocks, key=len))
        detail = str(unit.errors[0]) if unit.errors else "unparsable"
        raise ExtractError(f"no code block in the response parses: {detail}")
    return max(good, key=len)
