"""Recursive-descent parser for the supported C subset."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from . import ast as A
from .lexer import Span, Token, TokenKind, TokenStream, lex

STORAGE = {"typedef", "static", "extern", "inline", "register", "auto"}
QUALIFIERS = {"const", "volatile"}
TYPE_KEYWORDS = {
    "void", "char", "short", "int", "long", "float", "double", "signed",
    "unsigned", "bool", "_Bool",
}
HLS_TYPES = {"ac_int", "ac_uint"}
FOREIGN_KEYWORDS = {"class", "template", "namespace", "using", "try", "throw", "operator"}

ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "|=", "^="}
BINARY_PREC = {
    "||": 1, "&&": 2, "|": 3, "^": 4, "&": 5,
    "==": 6, "!=": 6, "<": 7, ">": 7, "<=": 7, ">=": 7,
    "<<": 8, ">>": 8, "+": 9, "-": 9, "*": 10, "/": 10, "%": 10,
}

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "0": "\0", "\\": "\\", "'": "'",
            '"': '"', "a": "\a", "b": "\b", "f": "\f", "v": "\v", "?": "?"}


class ParseError(Exception):
    def __init__(self, message: str, span: Optional[Span]):
        where = f" at line {span.line}" if span else ""
        super().__init__(message + where)
        self.message = message
        self.span = span


class ParseFailure(Exception):
    """Raised by :func:`parse` when at least one syntax error was recorded."""

    def __init__(self, errors: list[ParseError]):
        super().__init__("; ".join(str(e) for e in errors))
        self.errors = errors


def unescape(body: str) -> str:
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch != "\\" or i + 1 == len(body):
            out.append(ch)
            i += 1
            continue
        nxt = body[i + 1]
        if nxt == "x":
            m = re.match(r"[0-9a-fA-F]+", body[i + 2:])
            out.append(chr(int(m.group(), 16)) if m else "x")
            i += 2 + (len(m.group()) if m else 0)
        elif nxt in "01234567":
            m = re.match(r"[0-7]{1,3}", body[i + 1:])
            out.append(chr(int(m.group(), 8)))
            i += 1 + len(m.group())
        else:
            out.append(_ESCAPES.get(nxt, nxt))
            i += 2
    return "".join(out)


def int_value(text: str) -> int:
    digits = text.rstrip("uUlL")
    low = digits.lower()
    if low.startswith("0x"):
        return int(low, 16)
    if low.startswith("0b"):
        return int(low[2:], 2)
    if len(low) > 1 and low.startswith("0"):
        return int(low, 8)
    return int(low)


@dataclass
class _Mark:
    index: int


class Parser:
    def __init__(self, stream: TokenStream, source: bytes):
        self.stream = stream
        self.source = source
        self.toks: list[Token] = [t for t in stream if t.kind != TokenKind.COMMENT]
        self.pos = 0
        self.typedefs: set[str] = set()
        self.errors: list[ParseError] = []

    # ------------------------------------------------------------ helpers
    def peek(self, k: int = 0) -> Optional[Token]:
        i = self.pos + k
        return self.toks[i] if i < len(self.toks) else None

    def at_punct(self, *texts: str) -> bool:
        t = self.peek()
        return t is not None and t.is_punct(*texts)

    def at_keyword(self, *texts: str) -> bool:
        t = self.peek()
        return t is not None and t.is_keyword(*texts)

    def advance(self) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", self._eof_span())
        self.pos += 1
        return t

    def expect(self, text: str, what: str | None = None) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError(what or f"expected '{text}' before end of input", self._eof_span())
        if not t.is_punct(text):
            raise ParseError(what or f"expected '{text}' before '{t.text}'", t.span)
        self.pos += 1
        return t

    def _eof_span(self) -> Span:
        if self.toks:
            last = self.toks[-1].span
            return Span(last.end, last.end, last.line, last.column)
        return Span(0, 0, 1, 1)

    def span_from(self, start: int) -> Span:
        first = self.toks[start].span
        last = self.toks[max(start, self.pos - 1)].span
        return Span(first.start, last.end, first.line, first.column)

    # ------------------------------------------------------------ top level
    def parse_unit(self) -> A.TranslationUnit:
        items: list[A.Stmt] = []
        while self.peek() is not None:
            start = self.pos
            try:
                items.append(self.parse_external())
            except ParseError as e:
                self.errors.append(e)
                self._sync_top(start)
        span = Span(0, len(self.source), 1, 1)
        return A.TranslationUnit(tuple(items), source=self.source, tokens=self.stream, span=span)

    def _sync_top(self, start: int) -> None:
        if self.pos == start:
            self.pos += 1
        depth = 0
        while self.peek() is not None:
            t = self.advance()
            if t.is_punct("{"):
                depth += 1
            elif t.is_punct("}"):
                depth -= 1
                if depth <= 0:
                    if self.at_punct(";"):
                        self.pos += 1
                    return
            elif t.is_punct(";") and depth == 0:
                return

    def parse_external(self) -> A.Stmt:
        t = self.peek()
        if t.kind in (TokenKind.PRAGMA, TokenKind.DIRECTIVE):
            return self.parse_directive()
        if t.kind == TokenKind.KEYWORD and t.text in FOREIGN_KEYWORDS:
            return self.parse_foreign()
        if t.is_punct(";"):
            start = self.pos
            self.advance()
            return A.ExprStmt(None, span=self.span_from(start))
        return self.parse_declaration(top_level=True)

    def parse_directive(self) -> A.Stmt:
        start = self.pos
        t = self.advance()
        span = self.span_from(start)
        if t.kind == TokenKind.PRAGMA:
            return A.Pragma(t.text, span=span)
        body = t.text[1:].strip()
        if body.startswith("include"):
            return A.Directive(t.text, span=span)
        m = re.match(r"define\s+([A-Za-z_]\w*)(?!\()\s*(.*)$", body, re.S)
        if m:
            value = self._define_value(m.group(2))
            if value is not None or not m.group(2).strip():
                return A.Define(m.group(1), value, t.text, span=span)
        return A.Foreign("directive", t.text, span=span)

    def _define_value(self, text: str) -> Optional[A.Expr]:
        text = text.replace("\\\n", " ").strip()
        if not text:
            return None
        try:
            sub = Parser(lex(text.encode()), text.encode())
            sub.typedefs = self.typedefs
            expr = sub.parse_expr()
            if sub.peek() is not None:
                return None
            return A.strip_spans(expr)
        except Exception:
            return None

    def parse_foreign(self) -> A.Foreign:
        start = self.pos
        kind = self.peek().text
        depth = 0
        while self.peek() is not None:
            t = self.advance()
            if t.is_punct("{", "(", "["):
                depth += 1
            elif t.is_punct("}", ")", "]"):
                depth -= 1
                if depth == 0 and t.is_punct("}"):
                    nxt = self.peek()
                    if nxt is not None and nxt.is_punct(";"):
                        self.advance()
                        break
                    if nxt is not None and nxt.is_keyword("catch"):
                        continue
                    if kind not in ("class", "template"):
                        break
            elif t.is_punct(";") and depth == 0:
                break
        span = self.span_from(start)
        return A.Foreign(kind, self.source[span.start:span.end].decode("utf-8", "replace"), span=span)

    # ------------------------------------------------------------ declarations
    def is_type_start(self, k: int = 0) -> bool:
        t = self.peek(k)
        if t is None:
            return False
        if t.kind == TokenKind.KEYWORD:
            return t.text in STORAGE | QUALIFIERS | TYPE_KEYWORDS | {"struct", "union", "enum"}
        if t.kind == TokenKind.IDENT:
            if t.text in HLS_TYPES:
                nxt = self.peek(k + 1)
                return nxt is not None and nxt.is_punct("<")
            return t.text in self.typedefs
        return False

    def parse_specifiers(self) -> tuple[A.TypeSpec, tuple[str, ...]]:
        start = self.pos
        storage: list[str] = []
        quals: list[str] = []
        words: list[str] = []
        spec: Optional[A.TypeSpec] = None
        while True:
            t = self.peek()
            if t is None:
                break
            if t.kind == TokenKind.KEYWORD and t.text in STORAGE:
                storage.append(self.advance().text)
            elif t.kind == TokenKind.KEYWORD and t.text in QUALIFIERS:
                quals.append(self.advance().text)
            elif t.kind == TokenKind.KEYWORD and t.text in TYPE_KEYWORDS and spec is None:
                words.append(self.advance().text)
            elif t.is_keyword("struct", "union") and spec is None and not words:
                spec = self.parse_struct()
            elif t.is_keyword("enum") and spec is None and not words:
                spec = self.parse_enum()
            elif t.kind == TokenKind.IDENT and spec is None and not words and self.is_type_start():
                if t.text in HLS_TYPES:
                    spec = self.parse_hls_type()
                else:
                    self.advance()
                    spec = A.TypeSpec(t.text)
            else:
                break
        if spec is None:
            if not words:
                t = self.peek()
                raise ParseError(
                    f"expected type specifier before '{t.text}'" if t else "expected type specifier",
                    t.span if t else self._eof_span(),
                )
            spec = A.TypeSpec(canonical_base(words, self.toks[start].span))
        spec = A.TypeSpec(spec.base, tuple(quals), spec.struct, spec.enum, spec.template_args,
                          span=self.span_from(start))
        return spec, tuple(storage)

    def parse_hls_type(self) -> A.TypeSpec:
        name = self.advance().text
        self.expect("<")
        args = [self.parse_conditional(no_gt=True)]
        while self.at_punct(","):
            self.advance()
            args.append(self.parse_conditional(no_gt=True))
        self.expect(">")
        return A.TypeSpec(name, template_args=tuple(args))

    def parse_struct(self) -> A.TypeSpec:
        start = self.pos
        union = self.advance().text == "union"
        tag = None
        if self.peek() is not None and self.peek().kind == TokenKind.IDENT:
            tag = self.advance().text
        members = None
        if self.at_punct("{"):
            self.advance()
            mem: list[A.Declaration] = []
            while not self.at_punct("}"):
                if self.peek() is None:
                    raise ParseError("unclosed struct body", self._eof_span())
                mem.append(self.parse_declaration(top_level=False, member=True))
            self.expect("}")
            members = tuple(mem)
        if tag is None and members is None:
            raise ParseError("expected struct tag or body", self.peek().span if self.peek() else self._eof_span())
        s = A.StructSpec(tag, members, union, span=self.span_from(start))
        return A.TypeSpec("union" if union else "struct", struct=s)

    def parse_enum(self) -> A.TypeSpec:
        start = self.pos
        self.advance()
        tag = None
        if self.peek() is not None and self.peek().kind == TokenKind.IDENT:
            tag = self.advance().text
        enumerators = None
        if self.at_punct("{"):
            self.advance()
            items = []
            while not self.at_punct("}"):
                es = self.pos
                name_tok = self.advance()
                if name_tok.kind != TokenKind.IDENT:
                    raise ParseError(f"expected enumerator name before '{name_tok.text}'", name_tok.span)
                value = None
                if self.at_punct("="):
                    self.advance()
                    value = self.parse_conditional()
                items.append(A.Enumerator(name_tok.text, value, span=self.span_from(es)))
                if not self.at_punct("}"):
                    self.expect(",")
            self.expect("}")
            enumerators = tuple(items)
        e = A.EnumSpec(tag, enumerators, span=self.span_from(start))
        return A.TypeSpec("enum", enum=e)

    def parse_declaration(self, top_level: bool, member: bool = False) -> A.Stmt:
        start = self.pos
        spec, storage = self.parse_specifiers()
        if self.at_punct(";"):
            self.advance()
            return A.Declaration(spec, (), storage, span=self.span_from(start))
        declarators: list[A.Declarator] = []
        while True:
            d = self.parse_declarator()
            if (
                top_level
                and not declarators
                and d.derivs
                and isinstance(d.derivs[0], A.FuncDeriv)
                and self.at_punct("{")
            ):
                body = self.parse_block()
                return A.FunctionDef(spec, d, body, storage, span=self.span_from(start))
            if member and self.at_punct(":"):
                raise ParseError("bit-fields are not supported", self.peek().span)
            if self.at_punct("="):
                self.advance()
                init = self.parse_initializer()
                d = A.Declarator(d.name, d.derivs, init, d.paren_depth, span=self.span_from_node(d.span))
            declarators.append(d)
            if "typedef" in storage and d.name:
                self.typedefs.add(d.name)
            if self.at_punct(","):
                self.advance()
                continue
            break
        self.expect(";", f"expected ';' after declaration of '{declarators[-1].name}'")
        return A.Declaration(spec, tuple(declarators), storage, span=self.span_from(start))

    def span_from_node(self, span: Optional[Span]) -> Optional[Span]:
        if span is None:
            return None
        last = self.toks[self.pos - 1].span
        return Span(span.start, last.end, span.line, span.column)

    def parse_initializer(self) -> A.Expr:
        if self.at_punct("{"):
            return self.parse_init_list()
        return self.parse_assignment()

    def parse_init_list(self) -> A.InitList:
        start = self.pos
        self.expect("{")
        items = []
        trailing = False
        while not self.at_punct("}"):
            items.append(self.parse_initializer())
            trailing = False
            if self.at_punct(","):
                self.advance()
                trailing = True
            elif not self.at_punct("}"):
                t = self.peek()
                raise ParseError("expected ',' or '}' in initializer list",
                                 t.span if t else self._eof_span())
        self.expect("}")
        return A.InitList(tuple(items), trailing, span=self.span_from(start))

    def parse_declarator(self, abstract: bool = False) -> A.Declarator:
        start = self.pos
        pointers: list[A.PointerDeriv] = []
        while self.at_punct("*"):
            ps = self.pos
            self.advance()
            quals = []
            while self.at_keyword("const", "volatile"):
                quals.append(self.advance().text)
            pointers.append(A.PointerDeriv(tuple(quals), span=self.span_from(ps)))
        name = None
        inner: tuple = ()
        paren_depth = 0
        t = self.peek()
        if t is not None and t.is_punct("(") and self._nested_declarator_ahead():
            self.advance()
            nested = self.parse_declarator(abstract)
            self.expect(")")
            name, inner = nested.name, nested.derivs
            paren_depth = nested.paren_depth + 1
        elif t is not None and t.kind == TokenKind.IDENT:
            name = self.advance().text
        elif not abstract:
            raise ParseError(
                f"expected identifier before '{t.text}'" if t else "expected identifier",
                t.span if t else self._eof_span(),
            )
        suffixes: list = []
        while True:
            if self.at_punct("["):
                ss = self.pos
                self.advance()
                size = None if self.at_punct("]") else self.parse_expr()
                self.expect("]")
                suffixes.append(A.ArrayDeriv(size, span=self.span_from(ss)))
            elif self.at_punct("("):
                suffixes.append(self.parse_params())
            else:
                break
        derivs = tuple(inner) + tuple(suffixes) + tuple(reversed(pointers))
        span = self.span_from(start) if self.pos > start else None
        return A.Declarator(name, derivs, None, paren_depth, span=span)

    def _nested_declarator_ahead(self) -> bool:
        nxt = self.peek(1)
        if nxt is None:
            return False
        if nxt.is_punct("*"):
            return True
        if nxt.is_punct("("):
            return True
        return nxt.kind == TokenKind.IDENT and nxt.text not in self.typedefs and not (
            nxt.text in HLS_TYPES
        )

    def parse_params(self) -> A.FuncDeriv:
        start = self.pos
        self.expect("(")
        params: list[A.Param] = []
        variadic = False
        if self.at_keyword("void") and self.peek(1) is not None and self.peek(1).is_punct(")"):
            self.advance()
        while not self.at_punct(")"):
            if self.at_punct("..."):
                self.advance()
                variadic = True
                break
            ps = self.pos
            spec, storage = self.parse_specifiers()
            decl = self.parse_declarator(abstract=True)
            params.append(A.Param(spec, decl, storage, span=self.span_from(ps)))
            if not self.at_punct(")"):
                self.expect(",")
        self.expect(")")
        return A.FuncDeriv(tuple(params), variadic, span=self.span_from(start))

    def parse_type_name(self) -> A.TypeName:
        start = self.pos
        spec, _ = self.parse_specifiers()
        decl = self.parse_declarator(abstract=True)
        return A.TypeName(spec, decl, span=self.span_from(start))

    # ------------------------------------------------------------ statements
    def parse_block(self) -> A.Block:
        start = self.pos
        open_tok = self.expect("{")
        items: list[A.Stmt] = []
        while True:
            t = self.peek()
            if t is None:
                raise ParseError("unclosed block: expected '}' before end of input", open_tok.span)
            if t.is_punct("}"):
                break
            before = self.pos
            try:
                items.append(self.parse_statement())
            except ParseError as e:
                if self.peek() is None:
                    self.errors.append(e)
                    raise ParseError("unclosed block: expected '}' before end of input", open_tok.span)
                self.errors.append(e)
                self._sync_stmt(before)
        self.expect("}")
        return A.Block(tuple(items), span=self.span_from(start))

    def _sync_stmt(self, before: int) -> None:
        if self.pos == before:
            self.pos += 1
        while self.peek() is not None:
            t = self.peek()
            if t.is_punct("}"):
                return
            self.pos += 1
            if t.is_punct(";"):
                return

    def parse_statement(self) -> A.Stmt:
        t = self.peek()
        if t is None:
            raise ParseError("expected statement before end of input", self._eof_span())
        start = self.pos
        if t.kind in (TokenKind.PRAGMA, TokenKind.DIRECTIVE):
            return self.parse_directive()
        if t.is_punct("{"):
            return self.parse_block()
        if t.is_punct(";"):
            self.advance()
            return A.ExprStmt(None, span=self.span_from(start))
        if t.kind == TokenKind.KEYWORD:
            kw = t.text
            if kw == "if":
                self.advance()
                self.expect("(")
                cond = self.parse_expr()
                self.expect(")")
                then = self.parse_statement()
                other = None
                if self.at_keyword("else"):
                    self.advance()
                    other = self.parse_statement()
                return A.If(cond, then, other, span=self.span_from(start))
            if kw == "while":
                self.advance()
                self.expect("(")
                cond = self.parse_expr()
                self.expect(")")
                body = self.parse_statement()
                return A.While(cond, body, span=self.span_from(start))
            if kw == "do":
                self.advance()
                body = self.parse_statement()
                if not self.at_keyword("while"):
                    t2 = self.peek()
                    raise ParseError("expected 'while' after do body", t2.span if t2 else self._eof_span())
                self.advance()
                self.expect("(")
                cond = self.parse_expr()
                self.expect(")")
                self.expect(";")
                return A.DoWhile(body, cond, span=self.span_from(start))
            if kw == "for":
                self.advance()
                self.expect("(")
                if self.at_punct(";"):
                    s = self.pos
                    self.advance()
                    init = A.ExprStmt(None, span=self.span_from(s))
                elif self.is_type_start():
                    init = self.parse_declaration(top_level=False)
                else:
                    s = self.pos
                    e = self.parse_expr()
                    self.expect(";")
                    init = A.ExprStmt(e, span=self.span_from(s))
                cond = None if self.at_punct(";") else self.parse_expr()
                self.expect(";")
                step = None if self.at_punct(")") else self.parse_expr()
                self.expect(")")
                body = self.parse_statement()
                return A.For(init, cond, step, body, span=self.span_from(start))
            if kw == "switch":
                self.advance()
                self.expect("(")
                e = self.parse_expr()
                self.expect(")")
                body = self.parse_statement()
                return A.Switch(e, body, span=self.span_from(start))
            if kw == "case":
                self.advance()
                value = self.parse_conditional()
                self.expect(":")
                return A.Case(value, span=self.span_from(start))
            if kw == "default":
                self.advance()
                self.expect(":")
                return A.Default(span=self.span_from(start))
            if kw == "return":
                self.advance()
                e = None if self.at_punct(";") else self.parse_expr()
                self.expect(";", "expected ';' after return statement")
                return A.Return(e, span=self.span_from(start))
            if kw == "break":
                self.advance()
                self.expect(";")
                return A.Break(span=self.span_from(start))
            if kw == "continue":
                self.advance()
                self.expect(";")
                return A.Continue(span=self.span_from(start))
            if kw in FOREIGN_KEYWORDS:
                return self.parse_foreign()
            if kw == "goto":
                raise ParseError("goto is not supported", t.span)
        if self.is_type_start() and not (
            t.kind == TokenKind.IDENT and self.peek(1) is not None and self.peek(1).is_punct("=", "(", "[", ".", "->", "++", "--")
            and t.text not in HLS_TYPES
        ):
            return self.parse_declaration(top_level=False)
        e = self.parse_expr()
        self.expect(";", "expected ';' after expression")
        return A.ExprStmt(e, span=self.span_from(start))

    # ------------------------------------------------------------ expressions
    def parse_expr(self) -> A.Expr:
        start = self.pos
        e = self.parse_assignment()
        while self.at_punct(","):
            self.advance()
            r = self.parse_assignment()
            e = A.Comma(e, r, span=self.span_from(start))
        return e

    def parse_assignment(self) -> A.Expr:
        start = self.pos
        left = self.parse_conditional()
        t = self.peek()
        if t is not None and t.kind == TokenKind.PUNCT and t.text in ASSIGN_OPS:
            self.advance()
            value = self.parse_initializer() if self.at_punct("{") else self.parse_assignment()
            return A.Assign(t.text, left, value, span=self.span_from(start))
        return left

    def parse_conditional(self, no_gt: bool = False) -> A.Expr:
        start = self.pos
        cond = self.parse_binary(1, no_gt)
        if self.at_punct("?"):
            self.advance()
            then = self.parse_expr()
            self.expect(":")
            other = self.parse_conditional(no_gt)
            return A.Ternary(cond, then, other, span=self.span_from(start))
        return cond

    def parse_binary(self, min_prec: int, no_gt: bool = False) -> A.Expr:
        start = self.pos
        left = self.parse_unary()
        while True:
            t = self.peek()
            if t is None or t.kind != TokenKind.PUNCT or t.text not in BINARY_PREC:
                return left
            if no_gt and t.text in (">", ">>"):
                return left
            prec = BINARY_PREC[t.text]
            if prec < min_prec:
                return left
            self.advance()
            right = self.parse_binary(prec + 1, no_gt)
            left = A.Binary(t.text, left, right, span=self.span_from(start))

    def parse_unary(self) -> A.Expr:
        start = self.pos
        t = self.peek()
        if t is None:
            raise ParseError("expected expression before end of input", self._eof_span())
        if t.kind == TokenKind.PUNCT and t.text in ("-", "+", "!", "~", "&", "*", "++", "--"):
            self.advance()
            operand = self.parse_unary()
            return A.Unary(t.text, operand, span=self.span_from(start))
        if t.is_keyword("sizeof"):
            self.advance()
            if self.at_punct("(") and self.is_type_start(1):
                self.advance()
                tn = self.parse_type_name()
                self.expect(")")
                return A.SizeofType(tn, span=self.span_from(start))
            operand = self.parse_unary()
            return A.SizeofExpr(operand, span=self.span_from(start))
        if t.is_punct("(") and self.is_type_start(1):
            self.advance()
            tn = self.parse_type_name()
            self.expect(")")
            if self.at_punct("{"):
                operand = self.parse_init_list()
            else:
                operand = self.parse_unary()
            return A.Cast(tn, operand, span=self.span_from(start))
        return self.parse_postfix()

    def parse_postfix(self) -> A.Expr:
        start = self.pos
        e = self.parse_primary()
        while True:
            t = self.peek()
            if t is None or t.kind != TokenKind.PUNCT:
                return e
            if t.text == "[":
                self.advance()
                idx = self.parse_expr()
                self.expect("]")
                e = A.Index(e, idx, span=self.span_from(start))
            elif t.text == "(":
                self.advance()
                args = []
                while not self.at_punct(")"):
                    args.append(self.parse_assignment())
                    if not self.at_punct(")"):
                        self.expect(",")
                self.expect(")")
                e = A.Call(e, tuple(args), span=self.span_from(start))
            elif t.text in (".", "->"):
                self.advance()
                name = self.advance()
                if name.kind != TokenKind.IDENT:
                    raise ParseError(f"expected member name after '{t.text}'", name.span)
                e = A.Member(e, name.text, t.text == "->", span=self.span_from(start))
            elif t.text in ("++", "--"):
                self.advance()
                e = A.Postfix(t.text, e, span=self.span_from(start))
            else:
                return e

    def parse_primary(self) -> A.Expr:
        start = self.pos
        t = self.advance()
        span = t.span
        if t.kind == TokenKind.IDENT:
            return A.Ident(t.text, span=span)
        if t.kind == TokenKind.INT:
            return A.IntLit(t.text, int_value(t.text), span=span)
        if t.kind == TokenKind.FLOAT:
            return A.FloatLit(t.text, float(t.text.rstrip("fFlL")), span=span)
        if t.kind == TokenKind.CHAR:
            body = unescape(t.text[1:-1])
            return A.CharLit(t.text, ord(body[0]) if body else 0, span=span)
        if t.kind == TokenKind.STRING:
            return A.StrLit(t.text, unescape(t.text[1:-1]), span=span)
        if t.is_keyword("true", "false"):
            return A.BoolLit(t.text == "true", span=span)
        if t.is_keyword("nullptr"):
            return A.NullLit(t.text, span=span)
        if t.is_punct("("):
            e = self.parse_expr()
            self.expect(")", "expected ')'")
            return A.Paren(e, span=self.span_from(start))
        if t.is_punct("{"):
            self.pos -= 1
            return self.parse_init_list()
        raise ParseError(f"expected expression before '{t.text}'", span)


def canonical_base(words: list[str], span: Span) -> str:
    words = ["bool" if w == "_Bool" else w for w in words]
    if words in (["void"], ["bool"], ["float"], ["double"]):
        return words[0]
    if sorted(words) == ["double", "long"]:
        return "long double"
    sign = ""
    if "unsigned" in words:
        sign = "unsigned "
    elif "signed" in words:
        sign = "signed " if "char" in words else ""
    rest = [w for w in words if w not in ("signed", "unsigned")]
    if rest.count("char") == 1 and len(rest) == 1:
        return sign + "char"
    longs = rest.count("long")
    shorts = rest.count("short")
    others = [w for w in rest if w not in ("long", "short", "int")]
    if others or rest.count("int") > 1 or (longs and shorts) or longs > 2:
        raise ParseError("invalid combination of type specifiers: " + " ".join(words), span)
    if shorts:
        return sign + "short"
    if longs == 2:
        return sign + "long long"
    if longs == 1:
        return sign + "long"
    return sign + "int"


def parse_partial(stream: TokenStream, source: bytes | None = None) -> tuple[A.TranslationUnit, list[ParseError]]:
    if source is None:
        source = stream.text().encode("utf-8")
    p = Parser(stream, source)
    unit = p.parse_unit()
    return unit, p.errors


def parse(stream: TokenStream, source: bytes | None = None) -> A.TranslationUnit:
    unit, errors = parse_partial(stream, source)
    if errors:
        raise ParseFailure(errors)
    return unit


def parse_source(text: bytes | str) -> A.TranslationUnit:
    data = text.encode("utf-8") if isinstance(text, str) else text
    return parse(lex(data), data)
