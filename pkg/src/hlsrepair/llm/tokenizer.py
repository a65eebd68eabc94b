"""Deterministic token approximation used for budgets and the ledger.

Rules: every run of word characters is split into chunks of at most four
characters; every other non-space character is one token; whitespace is free.
"""
from __future__ import annotations

import re

_PIECE = re.compile(r"\w+|[^\w\s]")
CHUNK = 4


def tokenize(text: str) -> list[str]:
    out = []
    for m in _PIECE.finditer(text):
        s = m.group()
        if len(s) <= CHUNK or not (s[0].isalnum() or s[0] == "_"):
            out.append(s)
        else:
            out.extend(s[i:i + CHUNK] for i in range(0, len(s), CHUNK))
    return out


def count_tokens(text: str) -> int:
    n = 0
    for m in _PIECE.finditer(text):
        s = m.group()
        n += -(-len(s) // CHUNK) if (s[0].isalnum() or s[0] == "_") else 1
    return n
