"""The eight incompatibility detectors.

Each detector takes a :class:`Context` and returns diagnostics; message text
depends only on the class, identifier names and line numbers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..cfront import ast as A
from ..cfront.lexer import TokenKind
from ..cfront.scope import Resolution, Symbol, resolve
from ..cfront.types import (ArrayType, BoolType, FuncType, IntType, PointerType, TypeError_)
from .analysis import (call_graph, contains_function_pointer, cycle_through, int_width,
                       parent_map, pointer_depth, recursive_components, root_ident, static_type,
                       strip_parens, var_type)
from .diagnostics import Diagnostic, ErrorClass, Severity, make

ALLOC_FUNCTIONS = ("malloc", "calloc", "realloc", "free")
HLS_BOOL_BAD_OPS = ("+=", "-=", "*=", "/=", "%=", "<<=", ">>=")
MAX_ENUMERATED_WIDTH = 16


@dataclass
class Context:
    unit: A.TranslationUnit
    res: Resolution
    parents: dict[int, A.Node] = field(default_factory=dict)

    @classmethod
    def of(cls, unit: A.TranslationUnit) -> "Context":
        return cls(unit, resolve(unit), parent_map(unit))

    def parent(self, node: A.Node) -> Optional[A.Node]:
        return self.parents.get(id(node))

    def function_of(self, node: A.Node) -> Optional[str]:
        p = self.parent(node)
        while p is not None:
            if isinstance(p, A.FunctionDef):
                return p.name
            p = self.parent(p)
        return None


def _line(node: A.Node) -> int:
    return node.span.line if node.span else 0


# ---------------------------------------------------------------- T1
def is_array_bound(ctx: Context, sym: Symbol) -> bool:
    """The carve-out: a one-level pointer bound once to a named array and only indexed."""
    if sym.kind not in ("local", "global") or not isinstance(sym.node, A.Declarator):
        return False
    t = sym.ctype
    if not isinstance(t, PointerType) or pointer_depth(t) != 1 or isinstance(t.target, FuncType):
        return False
    init = sym.node.init
    if init is None:
        return False
    init = strip_parens(init)
    if not isinstance(init, A.Ident):
        return False
    target = ctx.res.lookup(init)
    if target is None or not isinstance(var_type(target), ArrayType):
        return False
    for use in ctx.res.uses_of(sym):
        p = ctx.parent(use)
        while isinstance(p, A.Paren):
            p = ctx.parent(p)
        if not (isinstance(p, A.Index) and strip_parens(p.base) is use):
            return False
    return True


def detect_pointer(ctx: Context) -> list[Diagnostic]:
    out = []
    cls = ErrorClass.T1_POINTER
    flagged: set[int] = set()
    for sym in ctx.res.variables:
        t = sym.ctype
        if sym.kind == "param" and isinstance(t, ArrayType):
            t = t.elem
        if pointer_depth(t) == 0 or contains_function_pointer(t):
            continue
        if is_array_bound(ctx, sym):
            continue
        flagged.add(id(sym))
        decl = sym.node
        what = "double pointer" if pointer_depth(t) > 1 else "pointer"
        if sym.kind == "param":
            body = f"{what} parameter '{sym.name}' in function '{sym.function}' at line {sym.line}"
        else:
            body = f"{what} variable '{sym.name}' declared at line {sym.line}"
        out.append(make(cls, decl.span, body, sym.name))
    for item in ctx.unit.items:
        if isinstance(item, A.FunctionDef):
            ft = ctx.res.function_symbols[item.name].ctype
            if isinstance(ft, FuncType) and pointer_depth(ft.ret) and not contains_function_pointer(ft.ret):
                out.append(make(cls, item.declarator.span,
                                f"function '{item.name}' returns a pointer at line {_line(item.declarator)}",
                                item.name))
    for node in ctx.unit.walk():
        if isinstance(node, A.StructSpec) and node.members:
            tag = node.tag or "<anonymous>"
            for m in node.members:
                try:
                    base = ctx.res.ctx.spec_type(m.spec)
                except TypeError_:
                    continue
                for d in m.declarators:
                    t = ctx.res.ctx.derive(base, d.derivs)
                    if pointer_depth(t) and not contains_function_pointer(t):
                        out.append(make(cls, d.span,
                                        f"pointer member '{d.name}' in struct '{tag}' at line {_line(d)}",
                                        d.name))
        elif isinstance(node, A.Unary) and node.op == "&":
            operand = strip_parens(node.operand)
            if isinstance(operand, A.Ident):
                sym = ctx.res.lookup(operand)
                if sym is not None and sym.kind == "function":
                    continue
            r = root_ident(operand)
            name = r.name if r is not None else "expression"
            out.append(make(cls, node.span, f"address of '{name}' taken at line {_line(node)}", name))
        elif isinstance(node, A.Unary) and node.op == "*":
            operand = strip_parens(node.operand)
            if isinstance(operand, A.Ident):
                sym = ctx.res.lookup(operand)
                if sym is not None and (id(sym) in flagged or contains_function_pointer(sym.ctype)):
                    continue
            r = root_ident(operand)
            name = r.name if r is not None else "expression"
            out.append(make(cls, node.span, f"dereference of '{name}' at line {_line(node)}", name))
    return out


# ---------------------------------------------------------------- T2
def detect_dynamic(ctx: Context) -> list[Diagnostic]:
    out = []
    cls = ErrorClass.T2_DYNAMIC_ARRAY
    for node in ctx.unit.walk():
        if isinstance(node, A.Call):
            f = strip_parens(node.func)
            if isinstance(f, A.Ident) and f.name in ALLOC_FUNCTIONS:
                sym = ctx.res.lookup(f)
                if sym is None or sym.kind != "builtin":
                    continue
                verb = "releases dynamic memory" if f.name == "free" else "allocates memory dynamically"
                out.append(make(cls, node.span, f"call to '{f.name}' at line {_line(node)} {verb}", f.name))
    for sym in ctx.res.variables:
        if sym.kind == "param" or not isinstance(sym.node, A.Declarator):
            continue
        for dv in sym.node.derivs:
            if isinstance(dv, A.ArrayDeriv) and dv.size is not None and ctx.res.ctx.const_eval(dv.size) is None:
                out.append(make(cls, sym.node.span,
                                f"array '{sym.name}' at line {sym.line} has a non-constant size", sym.name))
                break
    return out


# ---------------------------------------------------------------- T3
def detect_recursion(ctx: Context) -> list[Diagnostic]:
    out = []
    g = call_graph(ctx.unit, ctx.res)
    for comp in recursive_components(g):
        for fn in comp:
            cycle = cycle_through(g, comp, fn)
            site = g.edges[fn, cycle[1]]["site"]
            line = _line(site)
            if len(cycle) == 2:
                body = f"function '{fn}' calls itself at line {line}"
            else:
                body = f"function '{fn}' is part of the recursive cycle {' -> '.join(cycle)} at line {line}"
            out.append(make(ErrorClass.T3_RECURSION, site.span, body, fn))
    return out


# ---------------------------------------------------------------- T4
def detect_bitwidth(ctx: Context, profile) -> list[Diagnostic]:
    from ..bitwidth.core import plan as make_plan
    out = []
    if profile is None:
        return out
    syms = {s.uid: s for s in ctx.res.variables}
    for entry in make_plan(profile, ctx.unit):
        sym = syms.get(entry.uid)
        if sym is None or not entry.shrinks:
            continue
        body = (f"variable '{entry.name}' at line {entry.line} is declared with "
                f"{entry.declared_width} bits but needs {entry.width} bit{'s' if entry.width != 1 else ''}")
        out.append(make(ErrorClass.T4_BIT_WIDTH, sym.node.span, body, entry.name, Severity.ADVISORY))
    return out


# ---------------------------------------------------------------- T5
def detect_boolean(ctx: Context) -> list[Diagnostic]:
    out = []
    for node in ctx.unit.walk():
        if isinstance(node, A.Assign) and node.op in HLS_BOOL_BAD_OPS:
            target, op = node.target, node.op
        elif isinstance(node, (A.Unary, A.Postfix)) and node.op in ("++", "--"):
            target, op = node.operand, node.op
        else:
            continue
        if isinstance(static_type(target, ctx.res), BoolType):
            r = root_ident(target)
            name = r.name if r is not None else "expression"
            out.append(make(ErrorClass.T5_BOOLEAN_OP, node.span,
                            f"operator '{op}' applied to boolean variable '{name}' at line {_line(node)}",
                            name))
    return out


# ---------------------------------------------------------------- T6
def value_domain(ctx: Context, e: A.Expr) -> Optional[set[int]]:
    """Finite set of values the scrutinee can take, or ``None`` if too large."""
    e = strip_parens(e)
    if isinstance(e, A.Ident):
        sym = ctx.res.lookup(e)
        if sym is not None and sym.spec is not None and sym.is_variable:
            vals = ctx.res.ctx.enum_values_of(sym.spec)
            if vals is not None and not sym.node.derivs:
                return vals
    t = static_type(e, ctx.res)
    if isinstance(t, BoolType):
        return {0, 1}
    if isinstance(t, IntType) and t.hls and t.bits <= MAX_ENUMERATED_WIDTH:
        return set(range(t.lo, t.hi + 1))
    return None


def detect_incomplete(ctx: Context) -> list[Diagnostic]:
    out = []
    for node in ctx.unit.walk():
        if not isinstance(node, A.Switch):
            continue
        items = node.body.items if isinstance(node.body, A.Block) else (node.body,)
        if any(isinstance(i, A.Default) for i in items):
            continue
        cases = {ctx.res.ctx.const_eval(i.value) for i in items if isinstance(i, A.Case)}
        domain = value_domain(ctx, node.expr)
        if domain is not None and domain <= cases:
            continue
        r = root_ident(node.expr)
        name = r.name if r is not None else "expression"
        out.append(make(ErrorClass.T6_INCOMPLETE_STATEMENT, node.span,
                        f"switch on '{name}' at line {_line(node)} does not cover all values and has no default",
                        name))
    return out


# ---------------------------------------------------------------- T7
def detect_virtual(tokens) -> list[Diagnostic]:
    """Token-level scan, so it also works on C++ input the parser rejects."""
    if tokens is None:
        return []
    return [make(ErrorClass.T7_UNSUPPORTED_STRUCT, tok.span,
                 f"virtual function at line {tok.span.line} is not supported", "virtual")
            for tok in tokens.tokens if tok.kind == TokenKind.KEYWORD and tok.text == "virtual"]


def detect_unsupported(ctx: Context) -> list[Diagnostic]:
    cls = ErrorClass.T7_UNSUPPORTED_STRUCT
    out = detect_virtual(ctx.unit.tokens)
    for sym in ctx.res.variables:
        if contains_function_pointer(sym.ctype):
            out.append(make(cls, sym.node.span,
                            f"function pointer '{sym.name}' at line {sym.line} is not supported", sym.name))
    for node in ctx.unit.walk():
        if isinstance(node, A.StructSpec) and node.members:
            for m in node.members:
                try:
                    base = ctx.res.ctx.spec_type(m.spec)
                except TypeError_:
                    continue
                for d in m.declarators:
                    if contains_function_pointer(ctx.res.ctx.derive(base, d.derivs)):
                        out.append(make(cls, d.span,
                                        f"function pointer '{d.name}' at line {_line(d)} is not supported",
                                        d.name))
        elif isinstance(node, A.Foreign) and node.kind != "directive":
            out.append(make(cls, node.span,
                            f"unsupported construct '{node.kind}' at line {_line(node)}", node.kind))
        elif isinstance(node, A.Declaration) and "typedef" in node.storage:
            for d in node.declarators:
                try:
                    t = ctx.res.ctx.declared_type(node.spec, d)
                except TypeError_:
                    continue
                if contains_function_pointer(t):
                    out.append(make(cls, d.span,
                                    f"function pointer type '{d.name}' at line {_line(d)} is not supported",
                                    d.name))
    return out


# ---------------------------------------------------------------- T8
def detect_exception_static(ctx: Context) -> list[Diagnostic]:
    out = []
    cls = ErrorClass.T8_EXCEPTION
    for node in ctx.unit.walk():
        if isinstance(node, A.Index):
            bt = static_type(node.base, ctx.res)
            if not isinstance(bt, ArrayType) or bt.length is None:
                continue
            v = ctx.res.ctx.const_eval(node.index)
            if v is not None and (v < 0 or v >= bt.length):
                r = root_ident(node.base)
                name = r.name if r is not None else "expression"
                out.append(make(cls, node.span,
                                f"index {v} is out of bounds for array '{name}' of size {bt.length} "
                                f"at line {_line(node)}", name))
        elif (isinstance(node, A.Binary) and node.op in ("<<", ">>")) or \
                (isinstance(node, A.Assign) and node.op in ("<<=", ">>=")):
            left = node.left if isinstance(node, A.Binary) else node.target
            right = node.right if isinstance(node, A.Binary) else node.value
            v = ctx.res.ctx.const_eval(right)
            if v is None:
                continue
            width = int_width(static_type(left, ctx.res))
            if v < 0 or (width is not None and v >= width):
                r = root_ident(left)
                name = r.name if r is not None else "expression"
                what = f"{width} bits" if width is not None else "its width"
                out.append(make(cls, node.span,
                                f"shift by {v} on '{name}' ({what}) is illegal at line {_line(node)}", name))
    return out


TRAP_WORDS = {
    "out-of-bounds": "out-of-bounds access",
    "illegal-shift": "illegal shift",
    "division-by-zero": "division by zero",
}


def detect_exception_dynamic(source_unit, entry: str, dataset) -> list[Diagnostic]:
    from ..interp import CompileError, ExecError, compile_unit
    from ..interp.runtime import _call_lock, _run_once, _worker
    out = []
    try:
        prog = compile_unit(source_unit)
    except CompileError:
        return out
    if entry not in prog.functions:
        return out
    seen: set[tuple] = set()

    def work():
        for env in dataset:
            try:
                res = _run_once(prog, entry, env)
            except ExecError:
                return
            if not res.ok and res.trap in TRAP_WORDS and res.span is not None:
                key = (res.trap, res.span.start)
                if key in seen:
                    continue
                seen.add(key)
                out.append(make(ErrorClass.T8_EXCEPTION, res.span,
                                f"{TRAP_WORDS[res.trap]} at line {res.span.line} during execution",
                                res.trap, dynamic=True))

    with _call_lock:
        _worker.call(work)
    return out
