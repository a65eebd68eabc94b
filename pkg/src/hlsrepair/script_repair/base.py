"""Shared plumbing for the rewrite passes."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..cfront import ast as A
from ..cfront.lexer import Span
from ..cfront.source import Edit, SourceUnit
from ..detect import Context, Diagnostic


@dataclass(frozen=True)
class Fix:
    """One self-contained repair: a group of edits accepted or rejected together."""

    pass_name: str
    edits: tuple[Edit, ...]
    subject: str
    note: str = ""


@dataclass
class PassResult:
    fixes: list[Fix] = field(default_factory=list)
    skips: dict[tuple, str] = field(default_factory=dict)  # (class, subject) -> reason

    def skip(self, diag: Diagnostic, reason: str) -> None:
        self.skips.setdefault(diag_key(diag), reason)


def diag_key(d: Diagnostic) -> tuple:
    return (d.error_class, d.subject)


class Source:
    """Text access and small layout helpers over one parsed unit."""

    def __init__(self, unit: SourceUnit):
        self.unit = unit
        self.raw = unit.raw
        self.ctx = Context.of(unit.ast)

    def text(self, node_or_span) -> str:
        span = node_or_span if isinstance(node_or_span, Span) else node_or_span.span
        return self.raw[span.start:span.end].decode("utf-8", "replace")

    def line_start(self, pos: int) -> int:
        return self.raw.rfind(b"\n", 0, pos) + 1

    def indent_at(self, pos: int) -> str:
        start = self.line_start(pos)
        end = start
        while end < len(self.raw) and self.raw[end:end + 1] in (b" ", b"\t"):
            end += 1
        return self.raw[start:end].decode()

    def only_ws_before(self, pos: int) -> bool:
        return self.raw[self.line_start(pos):pos].strip() == b""

    def replace(self, node: A.Node, text: str, note: str = "") -> Edit:
        return Edit(node.span.start, node.span.end, text, note)

    def insert(self, pos: int, text: str, note: str = "") -> Edit:
        return Edit(pos, pos, text, note)

    def fresh(self, base: str) -> str:
        """A name not used anywhere in the unit."""
        taken = self.raw.decode("utf-8", "replace")
        name = base
        i = 1
        while _word_in(name, taken):
            name = f"{base}{i}"
            i += 1
        return name


def _word_in(name: str, text: str) -> bool:
    import re
    return re.search(rf"\b{re.escape(name)}\b", text) is not None


def has_side_effects(e: Optional[A.Node]) -> bool:
    if e is None:
        return False
    for n in e.walk():
        if isinstance(n, (A.Assign, A.Call)):
            return True
        if isinstance(n, (A.Unary, A.Postfix)) and n.op in ("++", "--"):
            return True
    return False


def enclosing(ctx: Context, node: A.Node, kinds) -> Optional[A.Node]:
    p = ctx.parent(node)
    while p is not None and not isinstance(p, kinds):
        p = ctx.parent(p)
    return p


def inside_loop(ctx: Context, node: A.Node, stop: A.Node) -> bool:
    p = ctx.parent(node)
    while p is not None and p is not stop:
        if isinstance(p, (A.For, A.While, A.DoWhile)):
            return True
        p = ctx.parent(p)
    return False


def statement_of(ctx: Context, node: A.Node) -> Optional[A.Stmt]:
    """The innermost statement containing an expression node."""
    p = node
    while p is not None and not isinstance(p, A.Stmt):
        p = ctx.parent(p)
    return p
