"""Shared static helpers: parent links, expression types, call graph."""
from __future__ import annotations

from typing import Optional

import networkx as nx

from ..cfront import ast as A
from ..cfront.scope import Resolution, Symbol
from ..cfront.types import (INT, ArrayType, CType, FuncType, IntType, PointerType, StructType,
                            TypeError_)


def parent_map(root: A.Node) -> dict[int, A.Node]:
    out: dict[int, A.Node] = {}
    stack = [root]
    while stack:
        node = stack.pop()
        for ch in node.children():
            out[id(ch)] = node
            stack.append(ch)
    return out


def strip_parens(e: A.Expr) -> A.Expr:
    while isinstance(e, A.Paren):
        e = e.expr
    return e


def root_ident(e: A.Expr) -> Optional[A.Ident]:
    """Leftmost identifier of an lvalue-ish chain (``a[i].f`` gives ``a``)."""
    e = strip_parens(e)
    while True:
        if isinstance(e, A.Ident):
            return e
        if isinstance(e, A.Index):
            e = strip_parens(e.base)
        elif isinstance(e, A.Member):
            e = strip_parens(e.base)
        elif isinstance(e, A.Unary) and e.op in ("*", "&"):
            e = strip_parens(e.operand)
        else:
            return None


def var_type(sym: Symbol) -> Optional[CType]:
    t = sym.ctype
    if sym.kind == "param" and isinstance(t, ArrayType):
        return PointerType(t.elem)
    return t


def static_type(e: A.Expr, res: Resolution) -> Optional[CType]:
    """Best-effort static type of an expression; ``None`` when unknown."""
    e = strip_parens(e)
    try:
        if isinstance(e, A.Ident):
            sym = res.lookup(e)
            if sym is None:
                return None
            if sym.kind == "enum":
                return INT
            return var_type(sym) if sym.is_variable else sym.ctype
        if isinstance(e, A.Index):
            bt = static_type(e.base, res)
            if isinstance(bt, (ArrayType, PointerType)):
                return bt.elem if isinstance(bt, ArrayType) else bt.target
            return None
        if isinstance(e, A.Member):
            bt = static_type(e.base, res)
            if e.arrow and isinstance(bt, PointerType):
                bt = bt.target
            if isinstance(bt, StructType):
                return bt.field_type(e.name)
            return None
        if isinstance(e, A.Unary):
            if e.op == "*":
                bt = static_type(e.operand, res)
                if isinstance(bt, PointerType):
                    return bt.target
                if isinstance(bt, ArrayType):
                    return bt.elem
                return None
            if e.op == "&":
                bt = static_type(e.operand, res)
                return PointerType(bt) if bt is not None else None
            if e.op == "!":
                return INT
            return static_type(e.operand, res)
        if isinstance(e, A.Cast):
            return res.ctx.typename(e.type)
        if isinstance(e, (A.IntLit, A.CharLit)):
            return INT
    except TypeError_:
        return None
    return None


def int_width(t: Optional[CType]) -> Optional[int]:
    """Width of the promoted integer type used for shifts."""
    if isinstance(t, IntType):
        if t.hls:
            return 64
        return max(32, t.bits)
    if t is not None and t.__class__.__name__ == "BoolType":
        return 32
    return None


def contains_function_pointer(t: Optional[CType]) -> bool:
    while isinstance(t, (PointerType, ArrayType)):
        inner = t.target if isinstance(t, PointerType) else t.elem
        if isinstance(t, PointerType) and isinstance(inner, FuncType):
            return True
        t = inner
    return False


def pointer_depth(t: Optional[CType]) -> int:
    n = 0
    while isinstance(t, (PointerType, ArrayType)):
        if isinstance(t, PointerType):
            n += 1
            t = t.target
        else:
            t = t.elem
    return n


def call_graph(unit: A.TranslationUnit, res: Resolution) -> nx.DiGraph:
    """Direct call graph over defined functions; edges keep their first call site."""
    g = nx.DiGraph()
    for item in unit.items:
        if isinstance(item, A.FunctionDef):
            g.add_node(item.name)
    for item in unit.items:
        if not isinstance(item, A.FunctionDef):
            continue
        for node in item.body.walk():
            if isinstance(node, A.Call):
                f = strip_parens(node.func)
                if isinstance(f, A.Ident):
                    sym = res.lookup(f)
                    if sym is not None and sym.kind == "function" and sym.name in g:
                        if not g.has_edge(item.name, sym.name):
                            g.add_edge(item.name, sym.name, site=node)
    return g


def recursive_components(g: nx.DiGraph) -> list[list[str]]:
    """Strongly connected components that contain a cycle, in node order."""
    order = {n: i for i, n in enumerate(g.nodes)}
    out = []
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1 or any(g.has_edge(n, n) for n in comp):
            out.append(sorted(comp, key=order.get))
    out.sort(key=lambda c: order[c[0]])
    return out


def cycle_through(g: nx.DiGraph, comp: list[str], fn: str) -> list[str]:
    if g.has_edge(fn, fn):
        return [fn, fn]
    sub = g.subgraph(comp)
    succ = [s for s in g.successors(fn) if s in comp]
    best = None
    for s in succ:
        path = nx.shortest_path(sub, s, fn)
        if best is None or len(path) < len(best):
            best = path
    return [fn] + best
