"""Byte-exact lexer for the supported C subset.

Whitespace is kept as leading trivia on each token (plus a trailing remainder
on the stream), so joining ``trivia + text`` for every token reproduces the
input exactly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

KEYWORDS = frozenset(
    """
    auto break case char const continue default do double else enum extern
    float for goto if inline int long register return short signed sizeof
    static struct switch typedef union unsigned void volatile while bool
    _Bool true false class virtual template typename namespace public private
    protected operator new delete try catch throw this nullptr using
    """.split()
)

# Ordered longest-first so maximal munch falls out of regex alternation.
PUNCTUATORS = [
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "::",
    "+", "-", "*", "/", "%", "<", ">", "=", "!", "~", "&", "|", "^", "?",
    ":", ";", ",", ".", "(", ")", "[", "]", "{", "}",
]


class TokenKind:
    KEYWORD = "keyword"
    IDENT = "identifier"
    INT = "integer-literal"
    FLOAT = "float-literal"
    CHAR = "char-literal"
    STRING = "string-literal"
    PUNCT = "punctuation"
    COMMENT = "comment"
    PRAGMA = "pragma-line"
    DIRECTIVE = "directive"


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    line: int
    column: int

    def __contains__(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span
    trivia: str = ""

    def is_punct(self, *texts: str) -> bool:
        return self.kind == TokenKind.PUNCT and self.text in texts

    def is_keyword(self, *texts: str) -> bool:
        return self.kind == TokenKind.KEYWORD and self.text in texts


class LexError(Exception):
    def __init__(self, message: str, span: Span):
        super().__init__(f"{message} at line {span.line}, column {span.column}")
        self.message = message
        self.span = span


_WS = re.compile(rb"[ \t\r\n\f\v]+|\\\r?\n")
_TOKEN = re.compile(
    rb"""
    (?P<comment>//[^\n]*|/\*(?:[^*]|\*(?!/))*\*/)
  | (?P<float>(?:\d+\.\d*|\.\d+)(?:[eE][+-]?\d+)?[fFlL]?|\d+[eE][+-]?\d+[fFlL]?)
  | (?P<int>0[xX][0-9a-fA-F]+[uUlL]*|0[bB][01]+[uUlL]*|\d+[uUlL]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<char>'(?:[^'\\\n]|\\.)+')
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>"""
    + b"|".join(re.escape(p.encode()) for p in PUNCTUATORS)
    + rb""")
    """,
    re.VERBOSE,
)
_DIRECTIVE = re.compile(rb"\#(?:[^\n\\]|\\\r?\n|\\(?!\r?\n))*")


def decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        return data.decode("latin-1")


class _Lines:
    """Maps byte offsets to 1-based (line, column)."""

    def __init__(self, data: bytes):
        self.starts = [0] + [m.end() for m in re.finditer(rb"\n", data)]

    def span(self, start: int, end: int) -> Span:
        import bisect

        idx = bisect.bisect_right(self.starts, start) - 1
        return Span(start, end, idx + 1, start - self.starts[idx] + 1)


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]
    tail: str  # trailing trivia after the last token

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def text(self) -> str:
        return "".join(t.trivia + t.text for t in self.tokens) + self.tail


def lex(data: bytes | str) -> TokenStream:
    if isinstance(data, str):
        data = data.encode("utf-8")
    text_of = _decoder_for(data)
    lines = _Lines(data)
    tokens: list[Token] = []
    pos = 0
    n = len(data)
    at_line_start = True
    trivia_start = 0
    while pos < n:
        m = _WS.match(data, pos)
        if m:
            if b"\n" in m.group():
                at_line_start = True
            pos = m.end()
            continue
        trivia = text_of(data[trivia_start:pos])
        if data[pos:pos + 1] == b"#":
            if not at_line_start:
                raise LexError("stray '#' in program", lines.span(pos, pos + 1))
            m = _DIRECTIVE.match(data, pos)
            end = m.end()
            raw = data[pos:end]
            body = raw[1:].lstrip()
            kind = TokenKind.PRAGMA if body.startswith(b"pragma") else TokenKind.DIRECTIVE
            tokens.append(Token(kind, text_of(raw), lines.span(pos, end), trivia))
            pos = trivia_start = end
            continue
        if data.startswith(b"/*", pos) and data.find(b"*/", pos + 2) < 0:
            raise LexError("unterminated comment", lines.span(pos, n))
        m = _TOKEN.match(data, pos)
        if m is None:
            ch = data[pos:pos + 1]
            if ch in (b'"', b"'"):
                eol = data.find(b"\n", pos)
                end = n if eol < 0 else eol
                raise LexError("unterminated literal", lines.span(pos, end))
            raise LexError(f"illegal character {ch!r}", lines.span(pos, pos + 1))
        kind_group = m.lastgroup
        raw = m.group()
        if kind_group == "ident":
            kind = TokenKind.KEYWORD if raw.decode() in KEYWORDS else TokenKind.IDENT
        else:
            kind = {
                "comment": TokenKind.COMMENT,
                "float": TokenKind.FLOAT,
                "int": TokenKind.INT,
                "char": TokenKind.CHAR,
                "string": TokenKind.STRING,
                "punct": TokenKind.PUNCT,
            }[kind_group]
        tokens.append(Token(kind, text_of(raw), lines.span(pos, m.end()), trivia))
        if kind != TokenKind.COMMENT:
            at_line_start = False
        pos = trivia_start = m.end()
    return TokenStream(tuple(tokens), text_of(data[trivia_start:]))


def _decoder_for(data: bytes):
    try:
        data.decode("utf-8")
    except UnicodeDecodeError:
        return lambda b: b.decode("latin-1")
    return lambda b: b.decode("utf-8")
