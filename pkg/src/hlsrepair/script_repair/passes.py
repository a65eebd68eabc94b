"""The six deterministic sub-passes.

Every pass inspects the current unit and proposes :class:`Fix` groups; the
driver decides which ones survive re-checking and equivalence testing.
"""
from __future__ import annotations

import re
from typing import Optional

from ..cfront import ast as A
from ..cfront.source import Edit
from ..cfront.types import ArrayType, BoolType, FuncType, PointerType, StructType, VoidType
from ..detect import Diagnostic, ErrorClass
from ..detect.analysis import (call_graph, int_width, pointer_depth, recursive_components,
                               root_ident, static_type, strip_parens, var_type)
from .base import Fix, PassResult, Source, has_side_effects, inside_loop, statement_of

MAX_DEPTH = 64
DEFER = "deferred to LLM"


def _find(src: Source, diag: Diagnostic, kinds) -> Optional[A.Node]:
    if diag.span is None:
        return None
    for node in src.unit.ast.walk():
        if isinstance(node, kinds) and node.span is not None and \
                node.span.start == diag.span.start and node.span.end == diag.span.end:
            return node
    return None


def _is_boolean(e: A.Expr, res, bool_syms: set[int]) -> bool:
    """Expression statically known to produce only 0 or 1."""
    e = strip_parens(e)
    if isinstance(e, A.BoolLit):
        return True
    if isinstance(e, A.IntLit):
        return e.value in (0, 1)
    if isinstance(e, A.Binary):
        return e.op in ("==", "!=", "<", ">", "<=", ">=", "&&", "||")
    if isinstance(e, A.Unary):
        return e.op == "!"
    if isinstance(e, A.Ternary):
        return _is_boolean(e.then, res, bool_syms) and _is_boolean(e.otherwise, res, bool_syms)
    if isinstance(e, A.Ident):
        sym = res.lookup(e)
        if sym is not None and sym.kind == "builtin" and e.name in ("true", "false"):
            return True
        if sym is not None and id(sym) in bool_syms:
            return True
    return isinstance(static_type(e, res), BoolType)


# ---------------------------------------------------------------- fix_boolean
def fix_boolean(src: Source, diags: list[Diagnostic], options: dict) -> PassResult:
    out = PassResult()
    res = src.ctx.res
    decls: dict[int, tuple[A.Declaration, list]] = {}
    for d in diags:
        node = _find(src, d, (A.Assign, A.Unary, A.Postfix))
        r = root_ident(node.target if isinstance(node, A.Assign) else node.operand) if node else None
        sym = res.lookup(r) if r is not None else None
        if sym is None:
            out.skip(d, f"boolean target is not a plain variable: {DEFER}")
            continue
        if sym.kind == "param":
            out.skip(d, f"boolean parameter '{sym.name}': {DEFER}")
            continue
        if not isinstance(sym.decl, A.Declaration) or sym.decl.spec.base not in ("bool", "_Bool"):
            out.skip(d, f"boolean type of '{sym.name}' comes from a typedef or struct: {DEFER}")
            continue
        decls.setdefault(id(sym.decl), (sym.decl, []))[1].append(d)
    for decl, ds in decls.values():
        fix, reason = _boolean_fix(src, decl)
        if fix is None:
            for d in ds:
                out.skip(d, reason)
        else:
            out.fixes.append(fix)
    return out


def _boolean_fix(src: Source, decl: A.Declaration):
    res = src.ctx.res
    syms = [s for s in res.variables if s.decl is decl]
    ids = {id(s) for s in syms}
    names = ", ".join(s.name for s in syms)
    edits = []
    spec_text = src.text(decl.spec)
    edits.append(src.replace(decl.spec, re.sub(r"\b(bool|_Bool)\b", "int", spec_text), "bool -> int"))
    for s in syms:
        init = s.node.init
        if init is None:
            continue
        items = init.items if isinstance(init, A.InitList) else (init,)
        for it in items:
            if isinstance(it, A.InitList):
                return None, f"nested initializer for '{s.name}': {DEFER}"
            if not _is_boolean(it, res, ids):
                edits.append(src.replace(it, f"(({src.text(it)}) != 0)", "normalize initializer"))
    for node in src.unit.ast.walk():
        if isinstance(node, A.Unary) and node.op == "&":
            r = root_ident(node.operand)
            if r is not None and id(res.lookup(r)) in ids:
                return None, f"address of boolean '{r.name}' is taken: {DEFER}"
        if isinstance(node, A.Assign):
            r = root_ident(node.target)
            if r is None or id(res.lookup(r)) not in ids:
                continue
            if not isinstance(static_type(node.target, res), BoolType):
                continue
            if node.op == "=":
                if not _is_boolean(node.value, res, ids):
                    edits.append(src.replace(node.value, f"(({src.text(node.value)}) != 0)",
                                             "normalize stored value"))
                continue
            if has_side_effects(node.target):
                return None, f"compound assignment target with side effects: {DEFER}"
            t = src.text(node.target)
            edits.append(src.replace(node, f"{t} = (({t} {node.op[:-1]} ({src.text(node.value)})) != 0)",
                                     f"expand '{node.op}'"))
        elif isinstance(node, (A.Unary, A.Postfix)) and node.op in ("++", "--"):
            r = root_ident(node.operand)
            if r is None or id(res.lookup(r)) not in ids:
                continue
            if not isinstance(static_type(node.operand, res), BoolType):
                continue
            if has_side_effects(node.operand):
                return None, f"increment target with side effects: {DEFER}"
            t = src.text(node.operand)
            new = f"{t} = 1" if node.op == "++" else f"{t} = !{t}"
            if isinstance(node, A.Postfix):
                parent = src.ctx.parent(node)
                unused = isinstance(parent, A.ExprStmt) or (isinstance(parent, A.For) and parent.step is node)
                if not unused:
                    return None, f"value of '{t}{node.op}' is used: {DEFER}"
                edits.append(src.replace(node, new, f"expand '{node.op}'"))
            else:
                edits.append(src.replace(node, f"({new})", f"expand '{node.op}'"))
    return Fix("fix_boolean", tuple(edits), names, "bool replaced by int"), ""


# ---------------------------------------------------------------- fix_incomplete
def fix_incomplete(src: Source, diags: list[Diagnostic], options: dict) -> PassResult:
    out = PassResult()
    for d in diags:
        sw = _find(src, d, (A.Switch,))
        if sw is None or not isinstance(sw.body, A.Block):
            out.skip(d, f"switch body is not a block: {DEFER}")
            continue
        close = sw.body.span.end - 1
        first_case = next((i for i in sw.body.items if isinstance(i, A.Case)), None)
        if src.only_ws_before(close) and first_case is not None:
            ci = src.indent_at(first_case.span.start)
            edit = src.insert(src.line_start(close), f"{ci}default:\n{ci}    break;\n", "add default")
        else:
            edit = src.insert(close, "default: break; ", "add default")
        out.fixes.append(Fix("fix_incomplete", (edit,), d.subject, "default branch added"))
    return out


# ---------------------------------------------------------------- fix_dynamic
def _alloc_elems(src: Source, call: A.Call, elem) -> Optional[int]:
    cx = src.ctx.res.ctx
    name = strip_parens(call.func).name
    if name == "malloc" and len(call.args) == 1:
        n = cx.const_eval(call.args[0])
    elif name == "calloc" and len(call.args) == 2:
        a, b = cx.const_eval(call.args[0]), cx.const_eval(call.args[1])
        n = a * b if a is not None and b is not None else None
    else:
        return None
    size = getattr(elem, "size", 0)
    if n is None or size <= 0 or n % size or n // size < 1:
        return None
    return n // size


def fix_dynamic(src: Source, diags: list[Diagnostic], options: dict) -> PassResult:
    out = PassResult()
    res = src.ctx.res
    frees: dict[int, list[A.Call]] = {}
    for node in src.unit.ast.walk():
        if isinstance(node, A.Call) and isinstance(strip_parens(node.func), A.Ident) \
                and strip_parens(node.func).name == "free" and len(node.args) == 1:
            r = strip_parens(node.args[0])
            if isinstance(r, A.Ident) and res.lookup(r) is not None:
                frees.setdefault(id(res.lookup(r)), []).append(node)
    handled_frees: set[int] = set()
    for d in diags:
        if d.subject in ("malloc", "calloc"):
            call = _find(src, d, (A.Call,))
            fix, reason, freed = _dynamic_fix(src, call, frees) if call is not None else (None, "", [])
            if fix is None:
                out.skip(d, reason or f"allocation pattern not recognised: {DEFER}")
            else:
                out.fixes.append(fix)
                handled_frees.update(id(c) for c in freed)
        elif d.subject == "realloc":
            out.skip(d, f"realloc resizes storage at run time: {DEFER}")
        elif d.subject == "free":
            call = _find(src, d, (A.Call,))
            if call is None or id(call) not in handled_frees:
                out.skip(d, f"release of storage that is not statically sized: {DEFER}")
        else:
            out.skip(d, f"allocation size is not a compile-time constant: {DEFER}")
    return out


def _dynamic_fix(src: Source, call: A.Call, frees):
    res = src.ctx.res
    top: A.Node = call
    p = src.ctx.parent(top)
    while isinstance(p, (A.Cast, A.Paren)):
        top, p = p, src.ctx.parent(p)
    if not isinstance(p, A.Declarator) or p.init is not top:
        return None, f"allocation result is not a declaration initializer: {DEFER}", []
    decl = src.ctx.parent(p)
    sym = next((s for s in res.variables if s.node is p), None)
    if sym is None or sym.kind != "local" or not isinstance(decl, A.Declaration) or len(decl.declarators) != 1:
        return None, f"allocation does not bind a single local pointer: {DEFER}", []
    t = sym.ctype
    if not isinstance(t, PointerType) or pointer_depth(t) != 1 or isinstance(t.target, (VoidType, FuncType)):
        return None, f"allocation bound to an untyped or multi-level pointer: {DEFER}", []
    if len(p.derivs) != 1:
        return None, f"unusual declarator for '{sym.name}': {DEFER}", []
    count = _alloc_elems(src, call, t.target)
    if count is None:
        return None, f"allocation size is not a compile-time constant: {DEFER}", []
    edits = []
    freed = []
    name = sym.name
    for use in res.uses_of(sym):
        parent = src.ctx.parent(use)
        while isinstance(parent, A.Paren):
            parent = src.ctx.parent(parent)
        if isinstance(parent, A.Index) and strip_parens(parent.base) is use:
            continue
        if isinstance(parent, A.Unary) and parent.op == "*":
            edits.append(src.replace(parent, f"{name}[0]", "deref -> index"))
            continue
        if isinstance(parent, A.Member) and parent.arrow and strip_parens(parent.base) is use:
            edits.append(src.replace(parent, f"{name}[0].{parent.name}", "arrow -> index"))
            continue
        if isinstance(parent, A.Call) and use in parent.args:
            f = strip_parens(parent.func)
            if isinstance(f, A.Ident) and f.name == "free":
                edits.append(src.replace(parent, f"(void)0 /* '{name}' is static storage */", "drop free"))
                freed.append(parent)
                continue
            fsym = res.lookup(f) if isinstance(f, A.Ident) else None
            if fsym is not None and fsym.kind == "function":
                continue
        return None, f"pointer '{name}' is reassigned or escapes: {DEFER}", []
    spec = src.text(decl.spec)
    init = " = {0}" if strip_parens(call.func).name == "calloc" and not isinstance(t.target, StructType) else ""
    edits.append(src.replace(decl, f"{spec} {name}[{count}]{init};", "malloc -> static array"))
    return Fix("fix_dynamic", tuple(edits), name, f"static array of {count}"), "", freed


# ---------------------------------------------------------------- fix_pointer
def fix_pointer(src: Source, diags: list[Diagnostic], options: dict) -> PassResult:
    out = PassResult()
    res = src.ctx.res
    for d in diags:
        msg = d.message
        if "pointer parameter" in msg and "double pointer" not in msg:
            sym = next((s for s in res.variables if s.kind == "param" and s.node.span is not None
                        and d.span is not None and s.node.span.start == d.span.start), None)
            fix, reason = _param_fix(src, sym) if sym is not None else (None, "")
            if fix is None:
                out.skip(d, reason or f"pointer parameter not recognised: {DEFER}")
            else:
                out.fixes.append(fix)
        elif "double pointer" in msg:
            out.skip(d, f"double pointer: {DEFER}")
        elif "pointer member" in msg or "returns a pointer" in msg:
            out.skip(d, f"pointer-linked data structure: {DEFER}")
        elif "address of" in msg:
            out.skip(d, f"address-of needs alias analysis: {DEFER}")
        elif "dereference" in msg:
            out.skip(d, f"dereference outside the single-binding pattern: {DEFER}")
        else:
            out.skip(d, f"multi-binding pointer: {DEFER}")
    return out


def _param_fix(src: Source, sym):
    res = src.ctx.res
    param = sym.decl
    t = sym.ctype
    if not isinstance(param, A.Param) or not isinstance(t, PointerType) or pointer_depth(t) != 1 \
            or isinstance(t.target, FuncType):
        return None, f"pointer parameter '{sym.name}' is not a plain single-level pointer: {DEFER}"
    if len(param.declarator.derivs) != 1 or param.declarator.paren_depth:
        return None, f"unusual declarator for '{sym.name}': {DEFER}"
    name = sym.name
    edits = []
    for use in res.uses_of(sym):
        parent = src.ctx.parent(use)
        while isinstance(parent, A.Paren):
            parent = src.ctx.parent(parent)
        if isinstance(parent, A.Index) and strip_parens(parent.base) is use:
            continue
        if isinstance(parent, A.Unary) and parent.op == "*":
            edits.append(src.replace(parent, f"{name}[0]", "deref -> index"))
            continue
        if isinstance(parent, A.Binary) and parent.op == "+":
            other = parent.right if strip_parens(parent.left) is use else parent.left
            outer = src.ctx.parent(parent)
            while isinstance(outer, A.Paren):
                outer = src.ctx.parent(outer)
            if isinstance(outer, A.Unary) and outer.op == "*":
                edits.append(src.replace(outer, f"{name}[{src.text(other)}]", "deref -> index"))
                continue
        if isinstance(parent, A.Member) and parent.arrow and strip_parens(parent.base) is use:
            edits.append(src.replace(parent, f"{name}[0].{parent.name}", "arrow -> index"))
            continue
        if isinstance(parent, A.Call) and use in parent.args:
            continue
        return None, f"pointer parameter '{name}' is reassigned, compared or escapes: {DEFER}"
    spec = src.text(param.spec)
    edits.append(src.replace(param, f"{spec} {name}[]", "pointer parameter -> array parameter"))
    return Fix("fix_pointer", tuple(edits), name, "array parameter"), ""


# ---------------------------------------------------------------- fix_recursion
def fix_recursion(src: Source, diags: list[Diagnostic], options: dict) -> PassResult:
    out = PassResult()
    res = src.ctx.res
    unit = src.unit.ast
    g = call_graph(unit, res)
    by_fn: dict[str, list[Diagnostic]] = {}
    for d in diags:
        by_fn.setdefault(d.subject, []).append(d)
    depth = options.get("max_depth", MAX_DEPTH)
    for comp in recursive_components(g):
        if len(comp) > 1:
            for fn in comp:
                for d in by_fn.get(fn, []):
                    out.skip(d, "non-self recursion: deferred to LLM")
            continue
        fn = comp[0]
        fd = unit.functions()[fn]
        fix, reason = _recursion_fix(src, fd, depth)
        if fix is None:
            for d in by_fn.get(fn, []):
                out.skip(d, reason)
        else:
            out.fixes.append(fix)
    return out


def _self_calls(src: Source, fd: A.FunctionDef) -> list[A.Call]:
    res = src.ctx.res
    out = []
    for node in fd.body.walk():
        if isinstance(node, A.Call):
            f = strip_parens(node.func)
            if isinstance(f, A.Ident):
                sym = res.lookup(f)
                if sym is not None and sym.kind == "function" and sym.name == fd.name:
                    out.append(node)
    return out


def _items(block: A.Block) -> list[A.Stmt]:
    return [i for i in block.items if not isinstance(i, A.Pragma)]


def _index_of(items, node) -> int:
    for i, it in enumerate(items):
        if it is node:
            return i
    return -1


def _in_tail(src: Source, stmt: A.Stmt, body: A.Block) -> bool:
    node = stmt
    while True:
        p = src.ctx.parent(node)
        if isinstance(p, A.Block):
            items = _items(p)
            rest = items[_index_of(items, node) + 1:]
            if rest and not (len(rest) == 1 and isinstance(rest[0], A.Return) and rest[0].expr is None):
                return False
            if p is body:
                return True
            node = p
        elif isinstance(p, A.If):
            node = p
        else:
            return False


def _param_decl(src: Source, p: A.Param, name: str) -> Optional[str]:
    derivs = p.declarator.derivs
    if any(not isinstance(d, A.PointerDeriv) for d in derivs) and not (
            len(derivs) == 1 and isinstance(derivs[0], A.ArrayDeriv)):
        return None
    stars = "*" * len(derivs)
    return f"{src.text(p.spec)} {stars}{name}"


def _recursion_fix(src: Source, fd: A.FunctionDef, depth: int):
    calls = _self_calls(src, fd)
    if not calls:
        return None, f"recursion through function pointers: {DEFER}"
    for c in calls:
        if inside_loop(src.ctx, c, fd):
            return None, f"recursive call inside a loop: {DEFER}"
    params = [p for p in fd.params if p.declarator.name]
    for c in calls:
        if len(c.args) != len(params):
            return None, f"recursive call arity mismatch: {DEFER}"
    ftype = src.ctx.res.function_symbols[fd.name].ctype
    void = isinstance(ftype, FuncType) and isinstance(ftype.ret, VoidType)
    if _all_tail(src, fd, calls, void):
        return _tail_fix(src, fd, calls, params, void)
    if void:
        return _stack_fix(src, fd, calls, params, depth)
    return None, f"non-tail recursion with a live result: {DEFER}"


def _all_tail(src: Source, fd, calls, void: bool) -> bool:
    for c in calls:
        p = src.ctx.parent(c)
        while isinstance(p, A.Paren):
            p = src.ctx.parent(p)
        if not void and isinstance(p, A.Return):
            continue
        if void and isinstance(p, A.ExprStmt) and _in_tail(src, p, fd.body):
            continue
        return False
    return True


def _body_indent(src: Source, body: A.Block) -> str:
    items = _items(body)
    if items:
        return src.indent_at(items[0].span.start)
    return src.indent_at(body.span.start) + "    "


def _tail_fix(src: Source, fd, calls, params, void: bool):
    edits = []
    temps = []
    for p in params:
        t = _param_decl(src, p, "{}")
        if t is None:
            return None, f"parameter '{p.declarator.name}' has a complex type: {DEFER}"
        temps.append(t)
    for c in calls:
        stmt = src.ctx.parent(c)
        while isinstance(stmt, A.Paren):
            stmt = src.ctx.parent(stmt)
        if len(params) == 1:
            body = f"{params[0].declarator.name} = {src.text(c.args[0])}; continue;"
        else:
            names = [src.fresh(f"next_{p.declarator.name}") for p in params]
            decls = " ".join(f"{t.format(n)} = {src.text(a)};" for t, n, a in zip(temps, names, c.args))
            assigns = " ".join(f"{p.declarator.name} = {n};" for p, n in zip(params, names))
            body = f"{decls} {assigns} continue;"
        edits.append(src.replace(stmt, "{ " + body + " }", "tail call -> loop"))
    ind = _body_indent(src, fd.body)
    body = fd.body
    edits.extend(_reindent(src, body, edits))
    edits.append(src.insert(body.span.start + 1, f"\n{ind}while (1) {{", "open loop"))
    close = body.span.end - 1
    if src.only_ws_before(close):
        edits.append(src.insert(src.line_start(close), f"{ind}    break;\n{ind}}}\n", "close loop"))
    else:
        edits.append(src.insert(close, " break; } ", "close loop"))
    return Fix("fix_recursion", tuple(edits), fd.name, "tail recursion -> loop"), ""


def _reindent(src: Source, body: A.Block, edits: list[Edit], extra: str = "    ") -> list[Edit]:
    """Zero-width indent insertions for each body line not inside another edit."""
    out = []
    pos = src.raw.find(b"\n", body.span.start) + 1
    close = body.span.end - 1
    while 0 < pos < close:
        if not any(e.start < pos < e.end or (e.start == pos and e.end > pos) for e in edits):
            if src.raw[pos:pos + 1] not in (b"\n", b"\r"):
                out.append(src.insert(pos, extra, "indent"))
        nxt = src.raw.find(b"\n", pos)
        if nxt < 0:
            break
        pos = nxt + 1
    return out


def _globals_written(src: Source, fd) -> set[int]:
    res = src.ctx.res
    out = set()
    for node in fd.body.walk():
        target = None
        if isinstance(node, A.Assign):
            target = node.target
        elif isinstance(node, (A.Unary, A.Postfix)) and node.op in ("++", "--"):
            target = node.operand
        if target is not None:
            r = root_ident(target)
            sym = res.lookup(r) if r is not None else None
            if sym is not None and sym.kind == "global":
                out.add(id(sym))
    return out


def _stack_fix(src: Source, fd, calls, params, depth: int):
    res = src.ctx.res
    stmts = []
    for c in calls:
        p = src.ctx.parent(c)
        if not isinstance(p, A.ExprStmt):
            return None, f"recursive call result is used: {DEFER}"
        stmts.append(p)
    block = src.ctx.parent(stmts[0])
    if not isinstance(block, A.Block) or any(src.ctx.parent(s) is not block for s in stmts):
        return None, f"recursive calls are not trailing statements of one block: {DEFER}"
    items = _items(block)
    idx = [_index_of(items, s) for s in stmts]
    if idx != list(range(idx[0], idx[0] + len(idx))):
        return None, f"recursive calls are not consecutive: {DEFER}"
    rest = items[idx[-1] + 1:]
    if rest and not (len(rest) == 1 and isinstance(rest[0], A.Return) and rest[0].expr is None):
        return None, f"work remains after the recursive calls: {DEFER}"
    if not _in_tail(src, stmts[-1], fd.body):
        return None, f"work remains after the recursive calls: {DEFER}"
    written = _globals_written(src, fd)
    for c in calls:
        for a in c.args:
            if has_side_effects(a):
                return None, f"recursive call arguments have side effects: {DEFER}"
            for n in a.walk():
                if isinstance(n, A.Ident):
                    sym = res.lookup(n)
                    if sym is not None and id(sym) in written:
                        return None, f"recursive call arguments read mutated global '{n.name}': {DEFER}"
    for node in fd.body.walk():
        if isinstance(node, A.Unary) and node.op == "&":
            return None, f"address-of inside a recursive function: {DEFER}"
        if isinstance(node, A.Return) and inside_loop(src.ctx, node, fd):
            return None, f"early return inside a loop: {DEFER}"
    stacks, decls = [], []
    for p in params:
        name = p.declarator.name
        sname = src.fresh(f"stack_{name}")
        d = _param_decl(src, p, sname)
        if d is None:
            return None, f"parameter '{name}' has a complex type: {DEFER}"
        stacks.append(sname)
        decls.append(f"{d}[MAX_DEPTH];")
    top = src.fresh("stack_top")
    ind = _body_indent(src, fd.body)
    inner = ind + "    "
    pnames = [p.declarator.name for p in params]
    push_now = " ".join(f"{s}[{top}] = {n};" for s, n in zip(stacks, pnames))
    pop = " ".join(f"{n} = {s}[{top}];" for s, n in zip(stacks, pnames))
    header = "".join(f"\n{ind}{d}" for d in decls)
    header += f"\n{ind}int {top} = 0;\n{ind}{push_now} {top}++;\n{ind}while ({top} > 0) {{\n{inner}{top}--;\n{inner}{pop}"
    edits = []
    pushes = []
    call_ind = src.indent_at(stmts[0].span.start)
    for c in reversed(calls):
        pushes.append(" ".join(f"{s}[{top}] = {src.text(a)};" for s, a in zip(stacks, c.args)) + f" {top}++;")
    edits.append(Edit(stmts[0].span.start, stmts[-1].span.end,
                      f"\n{call_ind}    ".join(pushes), "calls -> pushes"))
    for node in fd.body.walk():
        if isinstance(node, A.Return) and node.expr is None:
            edits.append(src.replace(node, "continue;", "return -> continue"))
    edits.extend(_reindent(src, fd.body, edits))
    edits.append(src.insert(fd.body.span.start + 1, header, "explicit stack"))
    close = fd.body.span.end - 1
    if src.only_ws_before(close):
        edits.append(src.insert(src.line_start(close), f"{ind}}}\n", "close loop"))
    else:
        edits.append(src.insert(close, " } ", "close loop"))
    define = f"#define MAX_DEPTH {depth}\n"
    if "MAX_DEPTH" in src.ctx.res.ctx.defines:
        define = ""
    if define:
        edits.append(src.insert(src.line_start(fd.span.start), define, "stack bound"))
    return Fix("fix_recursion", tuple(edits), fd.name, "recursion -> explicit stack"), ""


# ---------------------------------------------------------------- fix_exception
def fix_exception(src: Source, diags: list[Diagnostic], options: dict) -> PassResult:
    out = PassResult()
    res = src.ctx.res
    for d in diags:
        if not d.dynamic:
            out.skip(d, f"constant out-of-range operand: clamping would change semantics; {DEFER}")
            continue
        node = _find(src, d, (A.Index, A.Binary, A.Assign))
        if node is None:
            out.skip(d, f"trap site not found: {DEFER}")
            continue
        guard = None
        if isinstance(node, A.Index):
            bt = static_type(node.base, res)
            if isinstance(bt, ArrayType) and bt.length is not None and not has_side_effects(node.index):
                i = src.text(node.index)
                guard = f"({i}) >= 0 && ({i}) < {bt.length}"
        elif isinstance(node, (A.Binary, A.Assign)):
            op = node.op.rstrip("=") if isinstance(node, A.Assign) else node.op
            left = node.left if isinstance(node, A.Binary) else node.target
            right = node.right if isinstance(node, A.Binary) else node.value
            if not has_side_effects(right):
                r = src.text(right)
                if op in ("<<", ">>"):
                    w = int_width(static_type(left, res))
                    if w is not None:
                        guard = f"({r}) >= 0 && ({r}) < {w}"
                elif op in ("/", "%"):
                    guard = f"({r}) != 0"
        stmt = statement_of(src.ctx, node)
        if guard is None or not isinstance(stmt, A.ExprStmt):
            out.skip(d, f"no local guard preserves the program's behaviour: {DEFER}")
            continue
        parent = src.ctx.parent(stmt)
        text = src.text(stmt)
        new = f"if ({guard}) {text}"
        if not isinstance(parent, A.Block):
            new = "{ " + new + " }"
        out.fixes.append(Fix("fix_exception", (src.replace(stmt, new, "guard"),), d.subject, "guarded"))
    return out


PASSES = (
    ("fix_boolean", ErrorClass.T5_BOOLEAN_OP, fix_boolean),
    ("fix_dynamic", ErrorClass.T2_DYNAMIC_ARRAY, fix_dynamic),
    ("fix_pointer", ErrorClass.T1_POINTER, fix_pointer),
    ("fix_incomplete", ErrorClass.T6_INCOMPLETE_STATEMENT, fix_incomplete),
    ("fix_recursion", ErrorClass.T3_RECURSION, fix_recursion),
    ("fix_exception", ErrorClass.T8_EXCEPTION, fix_exception),
)
PASS_NAMES = tuple(p[0] for p in PASSES)
