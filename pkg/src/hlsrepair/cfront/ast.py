"""AST node definitions.

Nodes are frozen dataclasses. ``span`` is excluded from equality, so ``==``
is structural equality. Synthesized nodes carry ``span=None`` and are printed
in canonical style; nodes with a span print from the original source bytes.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Iterator, Optional

from .lexer import Span, TokenStream


@dataclass(frozen=True)
class Node:
    span: Optional[Span] = field(default=None, compare=False, repr=False, kw_only=True)

    def children(self) -> Iterator["Node"]:
        for f in fields(self):
            if f.name == "span":
                continue
            value = getattr(self, f.name)
            if isinstance(value, Node):
                yield value
            elif isinstance(value, tuple):
                for v in value:
                    if isinstance(v, Node):
                        yield v
                    elif isinstance(v, tuple):
                        yield from (x for x in v if isinstance(x, Node))

    def walk(self) -> Iterator["Node"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.children())))


# ---------------------------------------------------------------- types

@dataclass(frozen=True)
class Enumerator(Node):
    name: str
    value: Optional["Expr"] = None


@dataclass(frozen=True)
class EnumSpec(Node):
    tag: Optional[str]
    enumerators: Optional[tuple[Enumerator, ...]] = None


@dataclass(frozen=True)
class StructSpec(Node):
    tag: Optional[str]
    members: Optional[tuple["Declaration", ...]] = None
    union: bool = False


@dataclass(frozen=True)
class TypeSpec(Node):
    """Base type of a declaration.

    ``base`` is the canonical keyword spelling (``"unsigned int"``), a typedef
    name, ``"struct"``/``"enum"`` or ``"ac_int"``/``"ac_uint"``.
    """

    base: str
    qualifiers: tuple[str, ...] = ()
    struct: Optional[StructSpec] = None
    enum: Optional[EnumSpec] = None
    template_args: tuple["Expr", ...] = ()


@dataclass(frozen=True)
class PointerDeriv(Node):
    qualifiers: tuple[str, ...] = ()


@dataclass(frozen=True)
class ArrayDeriv(Node):
    size: Optional["Expr"] = None


@dataclass(frozen=True)
class FuncDeriv(Node):
    params: tuple["Param", ...] = ()
    variadic: bool = False


Deriv = PointerDeriv | ArrayDeriv | FuncDeriv


@dataclass(frozen=True)
class Declarator(Node):
    """``derivs`` run from the name outward: ``int *a[3]`` is (array, pointer)."""

    name: Optional[str]
    derivs: tuple[Deriv, ...] = ()
    init: Optional["Expr"] = None
    paren_depth: int = 0


@dataclass(frozen=True)
class Param(Node):
    spec: TypeSpec
    declarator: Declarator
    storage: tuple[str, ...] = ()


@dataclass(frozen=True)
class TypeName(Node):
    spec: TypeSpec
    declarator: Declarator


# ---------------------------------------------------------------- expressions

class Expr(Node):
    pass


@dataclass(frozen=True)
class Ident(Expr):
    name: str


@dataclass(frozen=True)
class IntLit(Expr):
    text: str
    value: int


@dataclass(frozen=True)
class FloatLit(Expr):
    text: str
    value: float


@dataclass(frozen=True)
class CharLit(Expr):
    text: str
    value: int


@dataclass(frozen=True)
class StrLit(Expr):
    text: str
    value: str


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class NullLit(Expr):
    text: str = "nullptr"


@dataclass(frozen=True)
class Paren(Expr):
    expr: Expr


@dataclass(frozen=True)
class Unary(Expr):
    """Prefix operator: ``- + ! ~ & * ++ --``."""

    op: str
    operand: Expr


@dataclass(frozen=True)
class Postfix(Expr):
    op: str
    operand: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Assign(Expr):
    op: str
    target: Expr
    value: Expr


@dataclass(frozen=True)
class Ternary(Expr):
    cond: Expr
    then: Expr
    otherwise: Expr


@dataclass(frozen=True)
class Call(Expr):
    func: Expr
    args: tuple[Expr, ...] = ()


@dataclass(frozen=True)
class Index(Expr):
    base: Expr
    index: Expr


@dataclass(frozen=True)
class Member(Expr):
    base: Expr
    name: str
    arrow: bool = False


@dataclass(frozen=True)
class Cast(Expr):
    type: TypeName
    expr: Expr


@dataclass(frozen=True)
class SizeofType(Expr):
    type: TypeName


@dataclass(frozen=True)
class SizeofExpr(Expr):
    expr: Expr


@dataclass(frozen=True)
class Comma(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class InitList(Expr):
    items: tuple[Expr, ...] = ()
    trailing_comma: bool = False


# ---------------------------------------------------------------- statements

class Stmt(Node):
    pass


@dataclass(frozen=True)
class Declaration(Stmt):
    spec: TypeSpec
    declarators: tuple[Declarator, ...] = ()
    storage: tuple[str, ...] = ()


@dataclass(frozen=True)
class ExprStmt(Stmt):
    expr: Optional[Expr] = None


@dataclass(frozen=True)
class Block(Stmt):
    items: tuple[Stmt, ...] = ()


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then: Stmt
    otherwise: Optional[Stmt] = None


@dataclass(frozen=True)
class While(Stmt):
    cond: Expr
    body: Stmt


@dataclass(frozen=True)
class DoWhile(Stmt):
    body: Stmt
    cond: Expr


@dataclass(frozen=True)
class For(Stmt):
    init: Optional[Stmt]  # Declaration or ExprStmt
    cond: Optional[Expr]
    step: Optional[Expr]
    body: Stmt


@dataclass(frozen=True)
class Switch(Stmt):
    expr: Expr
    body: Stmt


@dataclass(frozen=True)
class Case(Stmt):
    value: Expr


@dataclass(frozen=True)
class Default(Stmt):
    pass


@dataclass(frozen=True)
class Return(Stmt):
    expr: Optional[Expr] = None


@dataclass(frozen=True)
class Break(Stmt):
    pass


@dataclass(frozen=True)
class Continue(Stmt):
    pass


@dataclass(frozen=True)
class Pragma(Stmt):
    text: str


@dataclass(frozen=True)
class Directive(Stmt):
    """``#include`` and any preprocessor line that is not a simple define."""

    text: str


@dataclass(frozen=True)
class Define(Stmt):
    """Object-like ``#define NAME value``."""

    name: str
    value: Optional[Expr]
    text: str


@dataclass(frozen=True)
class Foreign(Stmt):
    """Construct outside the subset, kept as raw text."""

    kind: str
    text: str


@dataclass(frozen=True)
class FunctionDef(Stmt):
    spec: TypeSpec
    declarator: Declarator
    body: Block
    storage: tuple[str, ...] = ()

    @property
    def name(self) -> str:
        return self.declarator.name

    @property
    def params(self) -> tuple[Param, ...]:
        for d in self.declarator.derivs:
            if isinstance(d, FuncDeriv):
                return d.params
        return ()


@dataclass(frozen=True)
class TranslationUnit(Node):
    items: tuple[Stmt, ...] = ()
    source: bytes = field(default=b"", compare=False, repr=False)
    tokens: Optional[TokenStream] = field(default=None, compare=False, repr=False)

    def functions(self) -> dict[str, FunctionDef]:
        return {i.name: i for i in self.items if isinstance(i, FunctionDef)}


def strip_spans(node):
    """Copy of ``node`` with every span cleared (forces canonical printing)."""
    if isinstance(node, tuple):
        return tuple(strip_spans(n) for n in node)
    if not isinstance(node, Node):
        return node
    changes = {}
    for f in fields(node):
        if f.name in ("span", "source", "tokens"):
            continue
        changes[f.name] = strip_spans(getattr(node, f.name))
    return replace(node, span=None, **changes)


def replace_node(root: Node, target: Node, new: Optional[Node]) -> Node:
    """Return ``root`` with the object ``target`` replaced by ``new``.

    Every ancestor on the path loses its span so it prints canonically;
    ``new=None`` deletes the node from a tuple field.
    """
    result = _replace(root, target, new)
    if result is _MISSING:
        raise ValueError("target node not found")
    return result


_MISSING = object()


def _replace(node, target, new):
    if node is target:
        return new
    if isinstance(node, tuple):
        out = []
        hit = False
        for item in node:
            r = _replace(item, target, new)
            if r is _MISSING:
                out.append(item)
            else:
                hit = True
                if r is not None:
                    out.append(r)
        return tuple(out) if hit else _MISSING
    if not isinstance(node, Node):
        return _MISSING
    for f in fields(node):
        if f.name in ("span", "source", "tokens"):
            continue
        value = getattr(node, f.name)
        r = _replace(value, target, new)
        if r is not _MISSING:
            if isinstance(node, TranslationUnit):
                return replace(node, **{f.name: r})
            return replace(node, span=None, **{f.name: r})
    return _MISSING
