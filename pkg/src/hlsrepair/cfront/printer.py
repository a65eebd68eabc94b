"""Fidelity printer.

Nodes that still carry a span are emitted byte-for-byte from the source they
were parsed from; synthesized nodes (``span=None``) use canonical style with
4-space indentation and one statement per line.
"""
from __future__ import annotations

import bisect

from . import ast as A

INDENT = "    "


def print_unit(unit: A.TranslationUnit) -> bytes:
    text = _Printer(unit.source, unit.tokens).unit(unit)
    return text.encode("latin-1" if not _is_utf8(unit.source) else "utf-8")


class _Printer:
    def __init__(self, source: bytes, tokens=None):
        self.source = source
        self.utf8 = _is_utf8(source)
        self.starts = sorted(t.span.start for t in tokens if t.kind != "comment") if tokens else []

    def gap_ok(self, a: int, b: int) -> bool:
        i = bisect.bisect_left(self.starts, a)
        return i == len(self.starts) or self.starts[i] >= b

    def raw(self, node: A.Node) -> str:
        return self._gap(node.span.start, node.span.end)

    # ----------------------------------------------------------- sequences
    def unit(self, unit: A.TranslationUnit) -> str:
        return self.sequence(unit.items, 0, leading=True, trailing=True, container=unit)

    def sequence(self, items, depth: int, leading: bool = False, trailing: bool = False,
                 container: A.Node | None = None) -> str:
        out: list[str] = []
        prev_end = None
        for i, it in enumerate(items):
            if it.span is not None:
                if prev_end is not None and self.gap_ok(prev_end, it.span.start):
                    out.append(self._gap(prev_end, it.span.start))
                elif i == 0 and leading and self.gap_ok(0, it.span.start):
                    out.append(self._gap(0, it.span.start))
                elif out or depth:
                    out.append("\n" + INDENT * depth)
                out.append(self.raw(it))
                prev_end = it.span.end
            else:
                if out or depth:
                    out.append("\n" + INDENT * depth)
                out.append(self.stmt(it, depth))
                prev_end = None
        if trailing:
            if items and items[-1].span is not None and self.gap_ok(items[-1].span.end, len(self.source)):
                out.append(self._gap(items[-1].span.end, len(self.source)))
            elif out:
                out.append("\n")
        return "".join(out)

    def _gap(self, a: int, b: int) -> str:
        text = self.source[a:b]
        return text.decode("utf-8") if self.utf8 else text.decode("latin-1")

    # ----------------------------------------------------------- statements
    def stmt(self, s: A.Stmt, depth: int) -> str:
        if s.span is not None:
            return self.raw(s)
        if isinstance(s, A.Block):
            if not s.items:
                return "{\n" + INDENT * depth + "}"
            body = self.sequence(s.items, depth + 1)
            return "{" + body + "\n" + INDENT * depth + "}"
        if isinstance(s, A.Declaration):
            return self.declaration(s) + ";"
        if isinstance(s, A.FunctionDef):
            head = self.storage(s.storage) + self.typespec(s.spec) + " " + self.declarator(s.declarator)
            return head + " " + self.stmt(s.body, depth)
        if isinstance(s, A.ExprStmt):
            return (self.expr(s.expr) if s.expr is not None else "") + ";"
        if isinstance(s, A.If):
            text = "if (" + self.expr(s.cond) + ") " + self.sub(s.then, depth)
            if s.otherwise is not None:
                sep = " " if isinstance(s.then, A.Block) else "\n" + INDENT * depth
                if isinstance(s.otherwise, A.If):
                    text += sep + "else " + self.stmt(s.otherwise, depth)
                else:
                    text += sep + "else " + self.sub(s.otherwise, depth)
            return text
        if isinstance(s, A.While):
            return "while (" + self.expr(s.cond) + ") " + self.sub(s.body, depth)
        if isinstance(s, A.DoWhile):
            return "do " + self.sub(s.body, depth) + " while (" + self.expr(s.cond) + ");"
        if isinstance(s, A.For):
            if s.init is None or (isinstance(s.init, A.ExprStmt) and s.init.expr is None):
                init = ";"
            else:
                init = self.stmt(s.init, depth)
            cond = " " + self.expr(s.cond) if s.cond is not None else ""
            step = " " + self.expr(s.step) if s.step is not None else ""
            return "for (" + init + cond + ";" + step + ") " + self.sub(s.body, depth)
        if isinstance(s, A.Switch):
            return "switch (" + self.expr(s.expr) + ") " + self.sub(s.body, depth)
        if isinstance(s, A.Case):
            return "case " + self.expr(s.value) + ":"
        if isinstance(s, A.Default):
            return "default:"
        if isinstance(s, A.Return):
            return "return" + (" " + self.expr(s.expr) if s.expr is not None else "") + ";"
        if isinstance(s, A.Break):
            return "break;"
        if isinstance(s, A.Continue):
            return "continue;"
        if isinstance(s, (A.Pragma, A.Directive, A.Define)):
            return s.text
        if isinstance(s, A.Foreign):
            return s.text
        raise TypeError(f"cannot print {type(s).__name__}")

    def sub(self, s: A.Stmt, depth: int) -> str:
        if isinstance(s, A.Block):
            return self.stmt(s, depth)
        return "\n" + INDENT * (depth + 1) + self.stmt(s, depth + 1) if s.span is None else self.raw(s)

    def storage(self, storage) -> str:
        return "".join(x + " " for x in storage)

    def declaration(self, d: A.Declaration) -> str:
        if d.span is not None:
            return self.raw(d)[:-1] if self.raw(d).endswith(";") else self.raw(d)
        text = self.storage(d.storage) + self.typespec(d.spec)
        if d.declarators:
            text += " " + ", ".join(self.declarator(x) for x in d.declarators)
        return text

    def typespec(self, t: A.TypeSpec) -> str:
        if t.span is not None:
            return self.raw(t)
        quals = "".join(q + " " for q in t.qualifiers)
        if t.struct is not None:
            s = t.struct
            text = ("union" if s.union else "struct") + (" " + s.tag if s.tag else "")
            if s.members is not None:
                body = "".join("\n" + INDENT + self.declaration(m) + ";" for m in s.members)
                text += " {" + body + "\n}"
            return quals + text
        if t.enum is not None:
            e = t.enum
            text = "enum" + (" " + e.tag if e.tag else "")
            if e.enumerators is not None:
                parts = [x.name + (" = " + self.expr(x.value) if x.value is not None else "")
                         for x in e.enumerators]
                text += " { " + ", ".join(parts) + " }"
            return quals + text
        if t.template_args:
            return quals + t.base + "<" + ", ".join(self.expr(a) for a in t.template_args) + ">"
        return quals + t.base

    def declarator(self, d: A.Declarator) -> str:
        if d.span is not None:
            return self.raw(d)
        text = d.name or ""
        derivs = list(d.derivs)
        # Rebuild inside-out: a pointer applied before an array/function suffix
        # needs parentheses.
        prev_was_ptr = False
        for i, dv in enumerate(derivs):
            if isinstance(dv, A.PointerDeriv):
                quals = "".join(" " + q for q in dv.qualifiers)
                text = "*" + (quals.strip() + " " if quals else "") + text
                prev_was_ptr = True
            else:
                if prev_was_ptr:
                    text = "(" + text + ")"
                prev_was_ptr = False
                if isinstance(dv, A.ArrayDeriv):
                    text += "[" + (self.expr(dv.size) if dv.size is not None else "") + "]"
                else:
                    text += "(" + self.params(dv) + ")"
        if d.init is not None:
            text += " = " + self.expr(d.init)
        return text

    def params(self, f: A.FuncDeriv) -> str:
        if f.span is not None:
            return self.raw(f)[1:-1]
        parts = []
        for p in f.params:
            decl = self.declarator(p.declarator)
            parts.append(self.storage(p.storage) + self.typespec(p.spec) + (" " + decl if decl else ""))
        if f.variadic:
            parts.append("...")
        return ", ".join(parts) if parts else "void"

    def typename(self, t: A.TypeName) -> str:
        if t.span is not None:
            return self.raw(t)
        decl = self.declarator(t.declarator)
        return self.typespec(t.spec) + (" " + decl if decl else "")

    # ----------------------------------------------------------- expressions
    def expr(self, e: A.Expr) -> str:
        if e.span is not None:
            return self.raw(e)
        if isinstance(e, A.Ident):
            return e.name
        if isinstance(e, (A.IntLit, A.FloatLit, A.CharLit, A.StrLit)):
            return e.text
        if isinstance(e, A.BoolLit):
            return "true" if e.value else "false"
        if isinstance(e, A.NullLit):
            return e.text
        if isinstance(e, A.Paren):
            return "(" + self.expr(e.expr) + ")"
        if isinstance(e, A.Unary):
            inner = self.expr(e.operand)
            sep = " " if (e.op in ("-", "+", "&", "*") and inner.startswith(e.op[0])) else ""
            return e.op + sep + inner
        if isinstance(e, A.Postfix):
            return self.expr(e.operand) + e.op
        if isinstance(e, A.Binary):
            return self.expr(e.left) + " " + e.op + " " + self.expr(e.right)
        if isinstance(e, A.Assign):
            return self.expr(e.target) + " " + e.op + " " + self.expr(e.value)
        if isinstance(e, A.Ternary):
            return self.expr(e.cond) + " ? " + self.expr(e.then) + " : " + self.expr(e.otherwise)
        if isinstance(e, A.Call):
            return self.expr(e.func) + "(" + ", ".join(self.expr(a) for a in e.args) + ")"
        if isinstance(e, A.Index):
            return self.expr(e.base) + "[" + self.expr(e.index) + "]"
        if isinstance(e, A.Member):
            return self.expr(e.base) + ("->" if e.arrow else ".") + e.name
        if isinstance(e, A.Cast):
            return "(" + self.typename(e.type) + ")" + self.expr(e.expr)
        if isinstance(e, A.SizeofType):
            return "sizeof(" + self.typename(e.type) + ")"
        if isinstance(e, A.SizeofExpr):
            inner = self.expr(e.expr)
            return "sizeof" + (inner if inner.startswith("(") else " " + inner)
        if isinstance(e, A.Comma):
            return self.expr(e.left) + ", " + self.expr(e.right)
        if isinstance(e, A.InitList):
            return "{" + ", ".join(self.expr(x) for x in e.items) + ("," if e.trailing_comma else "") + "}"
        raise TypeError(f"cannot print {type(e).__name__}")


def _is_utf8(data: bytes) -> bool:
    try:
        data.decode("utf-8")
        return True
    except UnicodeDecodeError:
        return False


def format_node(node: A.Node, source: bytes = b"", depth: int = 0) -> str:
    """Text of a single node (expression, statement or type)."""
    p = _Printer(source)
    if isinstance(node, A.Expr):
        return p.expr(node)
    if isinstance(node, A.TypeSpec):
        return p.typespec(node)
    if isinstance(node, A.Declarator):
        return p.declarator(node)
    if isinstance(node, A.TypeName):
        return p.typename(node)
    return p.stmt(node, depth)
