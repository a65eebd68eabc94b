"""SourceUnit: an immutable program snapshot tagged with its pipeline stage."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Iterable, Optional

from . import ast as A
from .lexer import LexError, TokenStream, decode, lex
from .parser import ParseError, parse_partial
from .printer import print_unit


class Stage(IntEnum):
    ORIGINAL = 0
    SCRIPT_REPAIRED = 1
    LLM_REPAIRED = 2
    COMPILED_OK = 3


class RewriteConflict(Exception):
    pass


@dataclass(frozen=True)
class Edit:
    """Replace ``source[start:end]`` with ``text``."""

    start: int
    end: int
    text: str
    note: str = ""


@dataclass(frozen=True, eq=False)
class SourceUnit:
    name: str
    raw: bytes
    tokens: Optional[TokenStream]
    ast: Optional[A.TranslationUnit]
    errors: tuple = ()
    stage: Stage = Stage.ORIGINAL
    generation: int = 0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_bytes(cls, name: str, data: bytes | str, stage: Stage = Stage.ORIGINAL,
                   generation: int = 0) -> "SourceUnit":
        if isinstance(data, str):
            data = data.encode("utf-8")
        try:
            tokens = lex(data)
        except LexError as e:
            return cls(name, data, None, None, (e,), stage, generation)
        unit, errors = parse_partial(tokens, data)
        return cls(name, data, tokens, unit, tuple(errors), stage, generation)

    @classmethod
    def from_file(cls, path: str | Path) -> "SourceUnit":
        path = Path(path)
        return cls.from_bytes(path.name, path.read_bytes())

    @property
    def ok(self) -> bool:
        return self.ast is not None and not self.errors

    @property
    def text(self) -> str:
        return decode(self.raw)

    def rewrite(self, data: bytes | str, stage: Stage | None = None) -> "SourceUnit":
        stage = self.stage if stage is None else stage
        if stage < self.stage:
            raise ValueError(f"stage cannot move back from {self.stage.name} to {stage.name}")
        return SourceUnit.from_bytes(self.name, data, stage, self.generation + 1)

    def with_ast(self, ast: A.TranslationUnit, stage: Stage | None = None) -> "SourceUnit":
        return self.rewrite(print_unit(ast), stage)

    def apply_edits(self, edits: Iterable[Edit], stage: Stage | None = None) -> "SourceUnit":
        return self.rewrite(apply_edits(self.raw, edits), stage)

    def __repr__(self) -> str:
        return f"SourceUnit({self.name!r}, stage={self.stage.name}, generation={self.generation})"


def apply_edits(data: bytes, edits: Iterable[Edit]) -> bytes:
    ordered = sorted(edits, key=lambda e: (e.start, e.end))
    for a, b in zip(ordered, ordered[1:]):
        if b.start < a.end:
            raise RewriteConflict(f"overlapping edits at bytes {a.start}-{a.end} and {b.start}-{b.end}")
    out = []
    pos = 0
    for e in ordered:
        out.append(data[pos:e.start])
        out.append(e.text.encode("utf-8"))
        pos = e.end
    out.append(data[pos:])
    return b"".join(out)
