"""Closure compiler and runtime for the C subset.

Each AST node is compiled once into a Python closure; running a program is
then a walk over those closures. Statement closures return a control code
(``0`` normal, ``BREAK``, ``CONTINUE``, ``RETURN``).
"""
from __future__ import annotations

import math
import re
from typing import Callable, Optional

from ..cfront import ast as A
from ..cfront.lexer import Span
from ..cfront.scope import Resolution, Symbol, resolve
from ..cfront.types import (BOOL, CHAR, DOUBLE, INT, LLONG, UINT, VOID, ArrayType, BoolType,
                            CType, FloatType, FuncType, IntType, PointerType, StructType,
                            TypeError_)
from .values import FuncRef, Ptr, StructVal, copy_value, default_value

BREAK, CONTINUE, RETURN = 1, 2, 3

OUT_OF_BOUNDS = "out-of-bounds"
ILLEGAL_SHIFT = "illegal-shift"
STACK_OVERFLOW = "stack-overflow"
STEP_EXHAUSTED = "step-exhausted"
FREE_INVALID = "free-of-invalid"
DIV_ZERO = "division-by-zero"
ASSERTION = "assertion-failed"

ULLONG = IntType(64, False, "unsigned long long")
_PTRDIFF = IntType(64, True, "long")


class Trap(Exception):
    def __init__(self, kind: str, span: Optional[Span], detail: str = ""):
        super().__init__(f"{kind}{': ' + detail if detail else ''}")
        self.kind = kind
        self.span = span
        self.detail = detail


class CompileError(Exception):
    def __init__(self, message: str, span: Optional[Span] = None):
        where = f" at line {span.line}" if span else ""
        super().__init__(message + where)
        self.span = span


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


class Machine:
    """Mutable per-run state shared by the compiled closures."""

    def __init__(self):
        self.reset(10**7, 10**4)

    def reset(self, max_steps: int, max_depth: int) -> None:
        self.steps = 0
        self.max_steps = max_steps
        self.depth = 0
        self.max_depth = max_depth
        self.prints: list[str] = []
        self.heap: dict[int, list] = {}
        self.allocations = 0


def promote(t: CType) -> CType:
    if isinstance(t, BoolType):
        return INT
    if isinstance(t, IntType):
        if t.hls:
            return ULLONG if (t.bits >= 64 and not t.signed) else LLONG
        if t.bits < 32:
            return INT
    return t


def common_type(a: CType, b: CType) -> CType:
    if isinstance(a, FloatType) or isinstance(b, FloatType):
        if isinstance(a, FloatType) and isinstance(b, FloatType):
            return a if a.bits >= b.bits else b
        return a if isinstance(a, FloatType) else b
    a, b = promote(a), promote(b)
    if not isinstance(a, IntType) or not isinstance(b, IntType):
        return INT
    if a.signed == b.signed:
        return a if a.bits >= b.bits else b
    u, s = (a, b) if not a.signed else (b, a)
    if u.bits >= s.bits:
        return u
    return s


def _is_arith(t: CType) -> bool:
    return isinstance(t, (IntType, BoolType, FloatType))


def _int_wrapper(t) -> Callable[[int], int]:
    bits = t.bits
    mask = (1 << bits) - 1
    if getattr(t, "signed", False):
        half = 1 << (bits - 1)
        full = 1 << bits

        def w(v):
            v &= mask
            return v - full if v >= half else v
        return w
    return lambda v: v & mask


def _to_int(v) -> int:
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return 0
        return int(v)
    if v is None:
        return 0
    if isinstance(v, (Ptr, FuncRef)):
        return 1
    return v


def make_conv(src: CType, dst: CType) -> Optional[Callable]:
    """Value conversion from ``src`` to ``dst``; ``None`` means identity."""
    if isinstance(dst, BoolType):
        if isinstance(src, BoolType):
            return None
        return lambda v: 1 if v else 0
    if isinstance(dst, IntType):
        if isinstance(src, (IntType, BoolType)):
            s_lo = 0 if isinstance(src, BoolType) else src.lo
            s_hi = 1 if isinstance(src, BoolType) else src.hi
            if dst.lo <= s_lo and s_hi <= dst.hi:
                return None
            return _int_wrapper(dst)
        w = _int_wrapper(dst)
        return lambda v: w(_to_int(v))
    if isinstance(dst, FloatType):
        if isinstance(src, FloatType):
            return None
        return lambda v: float(v) if v is not None else 0.0
    if isinstance(dst, PointerType):
        if isinstance(src, (IntType, BoolType)):
            return lambda v: None if v == 0 else v
        return None
    if isinstance(dst, StructType):
        return copy_value
    return None


def _cdiv(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


_PRINTF = re.compile(r"%([-+ 0#]*)(\d+|\*)?(?:\.(\d+|\*))?(hh|h|ll|l|z|j|t|L)?([diouxXcsfFeEgGp%])")


class Function:
    def __init__(self, name: str, ftype: Optional[FuncType], span: Optional[Span]):
        self.name = name
        self.ftype = ftype
        self.span = span
        self.nslots = 1
        self.params: list = []
        self.body: Optional[Callable] = None
        self.ret_default = 0
        self.machine: Optional[Machine] = None

    def call(self, args: list):
        m = self.machine
        m.depth += 1
        if m.depth > m.max_depth:
            raise Trap(STACK_OVERFLOW, self.span, f"call depth exceeded in '{self.name}'")
        frame = [None] * self.nslots
        frame[0] = self.ret_default
        for (slot, is_struct, rec), a in zip(self.params, args):
            frame[slot] = [a]
            if rec is not None:
                rec[a] = rec.get(a, 0) + 1
        self.body(frame)
        m.depth -= 1
        return frame[0]


class Program:
    """A compiled translation unit."""

    def __init__(self, unit: A.TranslationUnit, profile: bool = False):
        self.unit = unit
        self.res: Resolution = resolve(unit)
        self.ctx = self.res.ctx
        self.m = Machine()
        self.profile = profile
        self.samples: dict[tuple, dict[int, int]] = {}
        self.sample_names: dict[tuple, Symbol] = {}
        self.sample_types: dict[tuple, IntType] = {}
        self.gslots: dict[int, int] = {}
        self.global_inits: list[Callable] = []
        self.nglobals = 0
        self.globals: list = []
        self.functions: dict[str, Function] = {}
        self._layouts: dict[int, dict[str, int]] = {}
        self._fn_slots: dict[int, int] = {}
        self._fn: Optional[Function] = None
        self._static_locals: dict[int, int] = {}
        if self.res.unresolved:
            ident = self.res.unresolved[0]
            raise CompileError(f"use of undeclared identifier '{ident.name}'", ident.span)
        for item in unit.items:
            if isinstance(item, A.FunctionDef):
                sym = self.res.function_symbols[item.name]
                fn = Function(item.name, sym.ctype, item.declarator.span)
                fn.machine = self.m
                self.functions[item.name] = fn
        for item in unit.items:
            if isinstance(item, A.FunctionDef):
                self._compile_function(item)
            elif isinstance(item, A.Declaration):
                self._compile_global_decl(item)

    # ================================================================ running
    def start(self, max_steps: int, max_depth: int) -> None:
        self.m.reset(max_steps, max_depth)
        self.globals = [None] * self.nglobals
        for init in self.global_inits:
            init()

    def global_symbol(self, name: str) -> Optional[Symbol]:
        for sym in self.res.variables:
            if sym.kind == "global" and sym.name == name:
                return sym
        return None

    def global_storage(self, sym: Symbol):
        return self.globals[self.gslots[id(sym)]]

    # ================================================================ helpers
    def _type(self, spec, decl) -> CType:
        try:
            return self.ctx.declared_type(spec, decl)
        except TypeError_ as e:
            raise CompileError(str(e), decl.span or spec.span)

    def _layout(self, st: StructType) -> dict[str, int]:
        lay = self._layouts.get(id(st))
        if lay is None:
            lay = {n: i for i, (n, _) in enumerate(st.fields)}
            self._layouts[id(st)] = lay
        return lay

    def _recorder(self, sym: Symbol, t: CType) -> Optional[dict]:
        if not self.profile or not isinstance(t, IntType):
            return None
        key = sym.uid
        self.sample_names[key] = sym
        self.sample_types[key] = t
        return self.samples.setdefault(key, {})

    def _new_slot(self, sym: Symbol) -> int:
        fn = self._fn
        slot = fn.nslots
        fn.nslots += 1
        self._fn_slots[id(sym)] = slot
        return slot

    # ================================================================ globals
    def _compile_global_decl(self, d: A.Declaration) -> None:
        if "typedef" in d.storage:
            return
        for decl in d.declarators:
            t = self._type(d.spec, decl)
            if isinstance(t, FuncType):
                continue
            sym = self._symbol_for(decl)
            slot = self.nglobals
            self.nglobals += 1
            self.gslots[id(sym)] = slot
            make = self._storage_maker(t, decl.init, sym)
            self.global_inits.append(self._global_init(slot, make))

    def _global_init(self, slot, make):
        def init():
            self.globals[slot] = make(None)
        return init

    def _symbol_for(self, decl: A.Declarator) -> Symbol:
        for sym in self.res.variables:
            if sym.node is decl:
                return sym
        raise CompileError(f"no symbol for declarator '{decl.name}'", decl.span)

    def _storage_maker(self, t: CType, init: Optional[A.Expr], sym: Symbol):
        """Closure ``frame -> storage`` (a box ``[v]`` or an array list)."""
        if isinstance(t, ArrayType):
            if t.length is None and isinstance(init, A.InitList):
                t = ArrayType(t.elem, len(init.items))
            elif t.length is None and isinstance(init, A.StrLit):
                t = ArrayType(t.elem, len(init.value) + 1)
            if init is None:
                return lambda f: default_value(t)
            build = self._init_value(init, t)
            return build
        rec = self._recorder(sym, t)
        if init is None:
            dv = default_value(t)
            if isinstance(t, StructType):
                return lambda f: [default_value(t)]
            return lambda f: [dv]
        build = self._init_value(init, t)
        if rec is not None:
            def make(f):
                v = build(f)
                rec[v] = rec.get(v, 0) + 1
                return [v]
            return make
        return lambda f: [build(f)]

    def _init_value(self, init: A.Expr, t: CType) -> Callable:
        if isinstance(init, A.InitList):
            if isinstance(t, ArrayType):
                parts = [self._init_value(x, t.elem) for x in init.items]
                n = t.length if t.length is not None else len(parts)
                if len(parts) > n:
                    raise CompileError("too many initializers", init.span)
                elem = t.elem

                def build_arr(f):
                    vals = [p(f) for p in parts]
                    vals.extend(default_value(elem) for _ in range(n - len(vals)))
                    return vals
                return build_arr
            if isinstance(t, StructType):
                fts = [ft for _, ft in t.fields]
                if len(init.items) > len(fts):
                    raise CompileError("too many initializers for struct", init.span)
                parts = [self._init_value(x, ft) for x, ft in zip(init.items, fts)]
                rest = fts[len(parts):]

                def build_struct(f):
                    return StructVal(t, [p(f) for p in parts] + [default_value(ft) for ft in rest])
                return build_struct
            if len(init.items) == 1:
                return self._init_value(init.items[0], t)
            if not init.items:
                dv = default_value(t)
                return lambda f: copy_value(dv)
            raise CompileError("braced initializer for scalar", init.span)
        if isinstance(t, ArrayType) and isinstance(init, A.StrLit):
            codes = [ord(c) for c in init.value] + [0]
            n = t.length if t.length is not None else len(codes)
            codes = (codes + [0] * n)[:n]
            return lambda f: list(codes)
        return self._converted(init, t)

    # ================================================================ functions
    def _compile_function(self, fd: A.FunctionDef) -> None:
        fn = self.functions[fd.name]
        self._fn = fn
        ftype = fn.ftype
        ret = ftype.ret if isinstance(ftype, FuncType) else INT
        self._ret_type = ret
        fn.ret_default = default_value(ret) if not isinstance(ret, (ArrayType,)) else 0
        params = []
        for p in fd.params:
            if not p.declarator.name:
                continue
            sym = self._param_symbol(p)
            slot = self._new_slot(sym)
            t = self._param_type(sym.ctype)
            params.append((slot, isinstance(t, StructType), self._recorder(sym, t)))
        fn.params = params
        fn.body = self._block(fd.body)
        self._fn = None

    def _param_symbol(self, p: A.Param) -> Symbol:
        for sym in self.res.variables:
            if sym.node is p.declarator:
                return sym
        raise CompileError("unbound parameter", p.span)

    @staticmethod
    def _param_type(t: CType) -> CType:
        if isinstance(t, ArrayType):
            return PointerType(t.elem)
        if isinstance(t, FuncType):
            return PointerType(t)
        return t

    def param_types(self, name: str) -> list[tuple[str, CType]]:
        fn = self.res.functions[name]
        out = []
        for p in fn.params:
            if p.declarator.name:
                sym = self._param_symbol(p)
                out.append((sym.name, self._param_type(sym.ctype)))
        return out

    # ================================================================ statements
    def _block(self, block: A.Block) -> Callable:
        stmts = [(self._stmt(s), s.span) for s in block.items if not isinstance(s, (A.Pragma,))]
        stmts = [(c, sp) for c, sp in stmts if c is not None]
        m = self.m
        if len(stmts) == 1:
            only, sp = stmts[0]

            def run1(f):
                m.steps += 1
                if m.steps > m.max_steps:
                    raise Trap(STEP_EXHAUSTED, sp)
                return only(f)
            return run1

        def run(f):
            for s, sp in stmts:
                m.steps += 1
                if m.steps > m.max_steps:
                    raise Trap(STEP_EXHAUSTED, sp)
                c = s(f)
                if c:
                    return c
            return 0
        return run

    def _body(self, s: A.Stmt) -> Callable:
        if isinstance(s, A.Block):
            return self._block(s)
        return self._block(A.Block((s,), span=s.span))

    def _cond(self, e: A.Expr) -> Callable:
        fn, t = self.rv(e)
        return fn

    def _stmt(self, s: A.Stmt) -> Optional[Callable]:
        m = self.m
        if isinstance(s, A.Block):
            return self._block(s)
        if isinstance(s, A.ExprStmt):
            if s.expr is None:
                return None
            fn, _ = self.rv(s.expr, discard=True)

            def run_expr(f):
                fn(f)
                return 0
            return run_expr
        if isinstance(s, A.Declaration):
            return self._local_decl(s)
        if isinstance(s, A.If):
            cond = self._cond(s.cond)
            then = self._body(s.then)
            other = self._body(s.otherwise) if s.otherwise is not None else None
            if other is None:
                return lambda f: then(f) if cond(f) else 0
            return lambda f: then(f) if cond(f) else other(f)
        if isinstance(s, A.While):
            cond = self._cond(s.cond)
            body = self._body(s.body)
            sp = s.span

            def run_while(f):
                while cond(f):
                    m.steps += 1
                    if m.steps > m.max_steps:
                        raise Trap(STEP_EXHAUSTED, sp)
                    c = body(f)
                    if c == BREAK:
                        break
                    if c == RETURN:
                        return RETURN
                return 0
            return run_while
        if isinstance(s, A.DoWhile):
            cond = self._cond(s.cond)
            body = self._body(s.body)
            sp = s.span

            def run_do(f):
                while True:
                    m.steps += 1
                    if m.steps > m.max_steps:
                        raise Trap(STEP_EXHAUSTED, sp)
                    c = body(f)
                    if c == BREAK:
                        break
                    if c == RETURN:
                        return RETURN
                    if not cond(f):
                        break
                return 0
            return run_do
        if isinstance(s, A.For):
            init = self._stmt(s.init) if s.init is not None else None
            cond = self._cond(s.cond) if s.cond is not None else None
            step = self.rv(s.step, discard=True)[0] if s.step is not None else None
            body = self._body(s.body)
            sp = s.span

            def run_for(f):
                if init is not None:
                    init(f)
                while cond is None or cond(f):
                    m.steps += 1
                    if m.steps > m.max_steps:
                        raise Trap(STEP_EXHAUSTED, sp)
                    c = body(f)
                    if c == BREAK:
                        break
                    if c == RETURN:
                        return RETURN
                    if step is not None:
                        step(f)
                return 0
            return run_for
        if isinstance(s, A.Switch):
            return self._switch(s)
        if isinstance(s, A.Return):
            if s.expr is None:
                return lambda f: RETURN
            if isinstance(self._ret_type, VOID.__class__):
                fn, _ = self.rv(s.expr)

                def run_void_ret(f):
                    fn(f)
                    return RETURN
                return run_void_ret
            fn = self._converted(s.expr, self._ret_type)

            def run_ret(f):
                f[0] = fn(f)
                return RETURN
            return run_ret
        if isinstance(s, A.Break):
            return lambda f: BREAK
        if isinstance(s, A.Continue):
            return lambda f: CONTINUE
        if isinstance(s, (A.Pragma, A.Define, A.Directive)):
            return None
        if isinstance(s, (A.Case, A.Default)):
            raise CompileError("case label outside switch body", s.span)
        if isinstance(s, A.Foreign):
            raise CompileError(f"unsupported construct '{s.kind}'", s.span)
        if isinstance(s, A.FunctionDef):
            raise CompileError("nested function definition", s.span)
        raise CompileError(f"unsupported statement {type(s).__name__}", s.span)

    def _switch(self, s: A.Switch) -> Callable:
        if not isinstance(s.body, A.Block):
            raise CompileError("switch body must be a block", s.span)
        scrut, st = self.rv(s.expr)
        pt = promote(st)
        conv = make_conv(st, pt) if isinstance(pt, IntType) else None
        labels: dict[int, int] = {}
        default_at = None
        stmts = []
        for item in s.body.items:
            if isinstance(item, A.Case):
                v = self.ctx.const_eval(item.value)
                if v is None:
                    raise CompileError("case label is not a constant", item.span)
                labels.setdefault(pt.wrap(v) if isinstance(pt, IntType) else v, len(stmts))
            elif isinstance(item, A.Default):
                default_at = len(stmts)
            else:
                c = self._stmt(item)
                if c is not None:
                    stmts.append((c, item.span))
        m = self.m
        n = len(stmts)

        def run_switch(f):
            v = scrut(f)
            if conv is not None:
                v = conv(v)
            start = labels.get(v, default_at)
            if start is None:
                return 0
            for i in range(start, n):
                c, sp = stmts[i]
                m.steps += 1
                if m.steps > m.max_steps:
                    raise Trap(STEP_EXHAUSTED, sp)
                r = c(f)
                if r == BREAK:
                    return 0
                if r:
                    return r
            return 0
        return run_switch

    def _local_decl(self, d: A.Declaration) -> Optional[Callable]:
        if "typedef" in d.storage:
            return None
        makers = []
        for decl in d.declarators:
            t = self._type(d.spec, decl)
            if isinstance(t, FuncType):
                continue
            sym = self._symbol_for(decl)
            if "static" in d.storage:
                slot = self.nglobals
                self.nglobals += 1
                self.gslots[id(sym)] = slot
                make = self._storage_maker(t, decl.init, sym)
                self.global_inits.append(self._global_init(slot, make))
                continue
            slot = self._new_slot(sym)
            makers.append((slot, self._storage_maker(t, decl.init, sym)))
        if not makers:
            return None
        if len(makers) == 1:
            slot, make = makers[0]

            def run_decl1(f):
                f[slot] = make(f)
                return 0
            return run_decl1

        def run_decl(f):
            for slot, make in makers:
                f[slot] = make(f)
            return 0
        return run_decl

    # ================================================================ lvalues
    def lv(self, e: A.Expr):
        """Compile an lvalue: returns (loc, type); ``loc(frame) -> (container, key)``."""
        if isinstance(e, A.Paren):
            return self.lv(e.expr)
        if isinstance(e, A.Ident):
            sym = self.res.lookup(e)
            if sym is None or not sym.is_variable:
                raise CompileError(f"'{e.name}' is not assignable", e.span)
            t = sym.ctype if sym.kind != "param" else self._param_type(sym.ctype)
            if id(sym) in self.gslots:
                slot = self.gslots[id(sym)]
                g = self
                if isinstance(t, ArrayType):
                    return (lambda f: (g.globals, slot)), t
                return (lambda f: (g.globals[slot], 0)), t
            slot = self._fn_slots.get(id(sym))
            if slot is None:
                raise CompileError(f"'{e.name}' used outside its function", e.span)
            if isinstance(t, ArrayType):
                return (lambda f: (f, slot)), t
            return (lambda f: (f[slot], 0)), t
        if isinstance(e, A.Index):
            return self._index_loc(e)
        if isinstance(e, A.Unary) and e.op == "*":
            pf, pt = self.rv(e.operand)
            if not isinstance(pt, PointerType):
                raise CompileError("dereference of non-pointer", e.span)
            sp = e.span

            def loc_deref(f):
                p = pf(f)
                if p is None or not isinstance(p, Ptr):
                    raise Trap(OUT_OF_BOUNDS, sp, "null dereference")
                if not 0 <= p.idx < len(p.store):
                    raise Trap(OUT_OF_BOUNDS, sp)
                return p.store, p.idx
            return loc_deref, pt.target
        if isinstance(e, A.Member):
            return self._member_loc(e)
        raise CompileError(f"expression is not an lvalue ({type(e).__name__})", e.span)

    def _index_loc(self, e: A.Index):
        bf, bt = self.rv(e.base)
        xf, xt = self.rv(e.index)
        if not isinstance(bt, PointerType) and isinstance(xt, PointerType):
            bf, bt, xf, xt = xf, xt, bf, bt
        if not isinstance(bt, PointerType):
            raise CompileError("subscripted value is not an array or pointer", e.span)
        sp = e.span

        def loc_index(f):
            p = bf(f)
            i = xf(f)
            if p is None:
                raise Trap(OUT_OF_BOUNDS, sp, "null dereference")
            j = p.idx + int(i)
            store = p.store
            if j < 0 or j >= len(store):
                raise Trap(OUT_OF_BOUNDS, sp, f"index {j} outside [0, {len(store)})")
            return store, j
        return loc_index, bt.target

    def _member_loc(self, e: A.Member):
        if e.arrow:
            pf, pt = self.rv(e.base)
            if not isinstance(pt, PointerType) or not isinstance(pt.target, StructType):
                raise CompileError(f"'->{e.name}' on non-struct pointer", e.span)
            st = pt.target
            idx = self._layout(st).get(e.name)
            if idx is None:
                raise CompileError(f"no member '{e.name}'", e.span)
            sp = e.span

            def loc_arrow(f):
                p = pf(f)
                if p is None:
                    raise Trap(OUT_OF_BOUNDS, sp, "null dereference")
                if not 0 <= p.idx < len(p.store):
                    raise Trap(OUT_OF_BOUNDS, sp)
                sv = p.store[p.idx]
                if not isinstance(sv, StructVal):
                    raise Trap(OUT_OF_BOUNDS, sp, "pointer does not address a struct")
                return sv.vals, idx
            return loc_arrow, st.field_type(e.name)
        bf, bt = self.rv(e.base)
        if not isinstance(bt, StructType):
            raise CompileError(f"'.{e.name}' on non-struct", e.span)
        idx = self._layout(bt).get(e.name)
        if idx is None:
            raise CompileError(f"no member '{e.name}'", e.span)
        return (lambda f: (bf(f).vals, idx)), bt.field_type(e.name)

    def _store(self, e: A.Expr):
        """(store(frame, loc, value), recorder) for an lvalue expression."""
        sym = None
        inner = e
        while isinstance(inner, A.Paren):
            inner = inner.expr
        if isinstance(inner, A.Ident):
            sym = self.res.lookup(inner)
        loc, t = self.lv(e)
        rec = self._recorder(sym, t) if sym is not None and sym.is_variable else None
        return loc, t, rec

    # ================================================================ rvalues
    def _converted(self, e: A.Expr, t: CType) -> Callable:
        """Compile ``e`` and convert its value to ``t``."""
        inner = e
        while isinstance(inner, A.Paren):
            inner = inner.expr
        if isinstance(inner, A.Cast) and isinstance(t, PointerType):
            ct = self.ctx.typename(inner.type)
            if isinstance(ct, PointerType) and self._is_alloc(inner.expr):
                return self._alloc(inner.expr, ct.target)
        if isinstance(t, PointerType) and self._is_alloc(inner):
            return self._alloc(inner, t.target)
        if isinstance(inner, A.InitList):
            return self._init_value(inner, t)
        fn, st = self.rv(e)
        if isinstance(t, PointerType) and isinstance(st, PointerType) and isinstance(e, A.StrLit):
            return fn
        if isinstance(st, ArrayType) and isinstance(t, ArrayType):
            return lambda f: copy_value(fn(f))
        conv = make_conv(st, t)
        if conv is None:
            return fn
        return lambda f: conv(fn(f))

    def _is_alloc(self, e: A.Expr) -> bool:
        while isinstance(e, A.Paren):
            e = e.expr
        if isinstance(e, A.Cast):
            return self._is_alloc(e.expr)
        if isinstance(e, A.Call) and isinstance(e.func, A.Ident):
            sym = self.res.lookup(e.func)
            return sym is not None and sym.kind == "builtin" and e.func.name in ("malloc", "calloc")
        return False

    def _alloc(self, e: A.Expr, elem: CType) -> Callable:
        while isinstance(e, (A.Paren, A.Cast)):
            e = e.expr
        if isinstance(elem, (type(VOID),)) or elem.size == 0:
            elem = CHAR
        args = [self.rv(a)[0] for a in e.args]
        name = e.func.name
        m = self.m
        esize = elem.size
        sp = e.span

        def alloc(f):
            vals = [a(f) for a in args]
            nbytes = vals[0] * vals[1] if name == "calloc" and len(vals) == 2 else vals[0]
            count = max(0, int(nbytes)) // esize
            store = [default_value(elem) for _ in range(count)]
            m.heap[id(store)] = store
            m.allocations += 1
            return Ptr(store, 0)
        alloc.span = sp
        return alloc

    def rv(self, e: A.Expr, discard: bool = False):
        """Compile an rvalue; returns (fn, type). Arrays decay to pointers."""
        fn, t = self._rv(e, discard)
        if isinstance(t, ArrayType):
            inner = fn
            return (lambda f: Ptr(inner(f), 0)), PointerType(t.elem)
        return fn, t

    def _rv(self, e: A.Expr, discard: bool = False):
        m = self.m
        if isinstance(e, A.Paren):
            return self._rv(e.expr, discard)
        if isinstance(e, A.IntLit):
            v = e.value
            text = e.text.lower()
            unsigned = "u" in text
            if "ll" in text or "l" in text.rstrip("u").lstrip("0x")[-1:] or v > 0xFFFFFFFF:
                t = ULLONG if unsigned else LLONG
            elif unsigned or (v > 0x7FFFFFFF and text.startswith(("0x", "0"))):
                t = UINT
            elif v > 0x7FFFFFFF:
                t = LLONG
            else:
                t = INT
            return (lambda f: v), t
        if isinstance(e, A.CharLit):
            v = e.value
            return (lambda f: v), INT
        if isinstance(e, A.BoolLit):
            v = int(e.value)
            return (lambda f: v), BOOL
        if isinstance(e, A.FloatLit):
            v = e.value
            t = DOUBLE if not e.text.lower().endswith("f") else FloatType(32)
            return (lambda f: v), t
        if isinstance(e, A.StrLit):
            codes = [ord(c) for c in e.value] + [0]
            s = e.value
            fn = lambda f: _CStr(s, codes)  # noqa: E731
            return fn, PointerType(CHAR)
        if isinstance(e, A.NullLit):
            return (lambda f: None), PointerType(VOID)
        if isinstance(e, A.Ident):
            return self._ident(e)
        if isinstance(e, (A.Index, A.Member)) or (isinstance(e, A.Unary) and e.op == "*"):
            loc, t = self.lv(e)
            if isinstance(t, FuncType):
                def load_fn(f):
                    c, k = loc(f)
                    return c[k]
                return load_fn, t

            def load(f):
                c, k = loc(f)
                return c[k]
            return load, t
        if isinstance(e, A.Unary):
            return self._unary(e)
        if isinstance(e, A.Postfix):
            return self._incdec(e.operand, e.op, prefix=False, span=e.span, discard=discard)
        if isinstance(e, A.Binary):
            return self._binary(e)
        if isinstance(e, A.Assign):
            return self._assign(e, discard)
        if isinstance(e, A.Ternary):
            cf = self._cond(e.cond)
            tf, tt = self.rv(e.then)
            of, ot = self.rv(e.otherwise)
            if _is_arith(tt) and _is_arith(ot):
                ct = common_type(tt, ot)
                tc, oc = make_conv(tt, ct), make_conv(ot, ct)
                if tc:
                    tf0 = tf
                    tf = lambda f: tc(tf0(f))  # noqa: E731
                if oc:
                    of0 = of
                    of = lambda f: oc(of0(f))  # noqa: E731
            else:
                ct = tt if not isinstance(tt, (IntType,)) else ot
            return (lambda f: tf(f) if cf(f) else of(f)), ct
        if isinstance(e, A.Call):
            return self._call(e)
        if isinstance(e, A.Cast):
            t = self.ctx.typename(e.type)
            if isinstance(t, type(VOID)):
                fn, _ = self.rv(e.expr, discard=True)
                return (lambda f: (fn(f), None)[1]), VOID
            return self._converted(e.expr, t), t
        if isinstance(e, A.SizeofType):
            v = self.ctx.typename(e.type).size
            return (lambda f: v), ULLONG
        if isinstance(e, A.SizeofExpr):
            _, t = self._rv(e.expr)
            v = t.size
            return (lambda f: v), ULLONG
        if isinstance(e, A.Comma):
            lf, _ = self.rv(e.left, discard=True)
            rf, rt = self.rv(e.right, discard)
            return (lambda f: (lf(f), rf(f))[1]), rt
        if isinstance(e, A.InitList):
            raise CompileError("initializer list needs a target type", e.span)
        raise CompileError(f"unsupported expression {type(e).__name__}", e.span)

    def _ident(self, e: A.Ident):
        sym = self.res.lookup(e)
        if sym is None:
            raise CompileError(f"use of undeclared identifier '{e.name}'", e.span)
        if sym.kind == "function":
            fn = self.functions.get(sym.name)
            if fn is None:
                raise CompileError(f"function '{sym.name}' has no definition", e.span)
            ref = FuncRef(fn)
            return (lambda f: ref), sym.ctype
        if sym.kind == "enum":
            v = self.ctx.enum_constants[sym.name]
            return (lambda f: v), INT
        if sym.kind == "define":
            if sym.node.value is None:
                raise CompileError(f"macro '{sym.name}' has no value", e.span)
            return self._rv(sym.node.value)
        if sym.kind == "builtin":
            if sym.name == "NULL":
                return (lambda f: None), PointerType(VOID)
            from ..cfront.types import BUILTIN_CONSTANTS
            if sym.name in BUILTIN_CONSTANTS:
                v = BUILTIN_CONSTANTS[sym.name]
                return (lambda f: v), INT
            raise CompileError(f"builtin '{sym.name}' used as a value", e.span)
        t = sym.ctype if sym.kind != "param" else self._param_type(sym.ctype)
        if id(sym) in self.gslots:
            slot = self.gslots[id(sym)]
            g = self
            if isinstance(t, ArrayType):
                return (lambda f: g.globals[slot]), t
            return (lambda f: g.globals[slot][0]), t
        slot = self._fn_slots.get(id(sym))
        if slot is None:
            raise CompileError(f"'{e.name}' used before its declaration", e.span)
        if isinstance(t, ArrayType):
            return (lambda f: f[slot]), t
        return (lambda f: f[slot][0]), t

    def _unary(self, e: A.Unary):
        op = e.op
        if op in ("++", "--"):
            return self._incdec(e.operand, op, prefix=True, span=e.span, discard=False)
        if op == "&":
            inner = e.operand
            while isinstance(inner, A.Paren):
                inner = inner.expr
            if isinstance(inner, A.Ident):
                sym = self.res.lookup(inner)
                if sym is not None and sym.kind == "function":
                    return self._rv(inner)
            _, it = self._rv(inner)
            if isinstance(it, ArrayType):
                fn, _ = self._rv(inner)
                return (lambda f: Ptr(fn(f), 0)), PointerType(it)
            loc, t = self.lv(inner)

            def addr(f):
                c, k = loc(f)
                if isinstance(c, list):
                    return Ptr(c, k)
                raise Trap(OUT_OF_BOUNDS, e.span, "cannot take address")
            return addr, PointerType(t)
        fn, t = self.rv(e.operand)
        if op == "!":
            return (lambda f: 0 if fn(f) else 1), INT
        if op == "+":
            pt = promote(t)
            conv = make_conv(t, pt)
            return (fn if conv is None else (lambda f: conv(fn(f)))), pt
        if op == "-":
            pt = promote(t)
            if isinstance(pt, FloatType):
                return (lambda f: -fn(f)), pt
            w = _int_wrapper(pt)
            conv = make_conv(t, pt) or (lambda v: v)
            return (lambda f: w(-conv(fn(f)))), pt
        if op == "~":
            pt = promote(t)
            w = _int_wrapper(pt)
            conv = make_conv(t, pt) or (lambda v: v)
            return (lambda f: w(~conv(fn(f)))), pt
        raise CompileError(f"unsupported unary operator {op}", e.span)

    def _incdec(self, target: A.Expr, op: str, prefix: bool, span, discard: bool):
        loc, t, rec = self._store(target)
        delta = 1 if op == "++" else -1
        if isinstance(t, PointerType):
            def step_ptr(f):
                c, k = loc(f)
                old = c[k]
                if old is None:
                    raise Trap(OUT_OF_BOUNDS, span, "arithmetic on null pointer")
                new = Ptr(old.store, old.idx + delta)
                c[k] = new
                return new if prefix else old
            return step_ptr, t
        if isinstance(t, BoolType):
            def step_bool(f):
                c, k = loc(f)
                old = c[k]
                new = 1 if (old + delta) else 0
                c[k] = new
                return new if prefix else old
            return step_bool, t
        if isinstance(t, FloatType):
            def step_float(f):
                c, k = loc(f)
                old = c[k]
                new = old + delta
                c[k] = new
                return new if prefix else old
            return step_float, t
        w = _int_wrapper(t)

        def step_int(f):
            c, k = loc(f)
            old = c[k]
            new = w(old + delta)
            c[k] = new
            if rec is not None:
                rec[new] = rec.get(new, 0) + 1
            return new if prefix else old
        return step_int, t

    def _assign(self, e: A.Assign, discard: bool):
        loc, t, rec = self._store(e.target)
        if isinstance(t, ArrayType):
            raise CompileError("assignment to array", e.span)
        if e.op == "=":
            vf = self._converted(e.value, t)

            def assign(f):
                v = vf(f)
                c, k = loc(f)
                c[k] = v
                if rec is not None:
                    rec[v] = rec.get(v, 0) + 1
                return v
            return assign, t
        op = e.op[:-1]
        vf, vt = self.rv(e.value)
        if isinstance(t, PointerType):
            if op not in ("+", "-"):
                raise CompileError(f"invalid pointer operator {e.op}", e.span)
            sign = 1 if op == "+" else -1

            def ptr_comp(f):
                c, k = loc(f)
                p = c[k]
                n = vf(f)
                if p is None:
                    raise Trap(OUT_OF_BOUNDS, e.span, "arithmetic on null pointer")
                new = Ptr(p.store, p.idx + sign * int(n))
                c[k] = new
                return new
            return ptr_comp, t
        opfn, ct = self._arith_op(op, t, vt, e.span)
        conv_back = make_conv(ct, t)

        def compound(f):
            c, k = loc(f)
            v = opfn(c[k], vf(f))
            if conv_back is not None:
                v = conv_back(v)
            c[k] = v
            if rec is not None:
                rec[v] = rec.get(v, 0) + 1
            return v
        return compound, t

    def _arith_op(self, op: str, lt: CType, rt: CType, span):
        """Binary arithmetic on values of types (lt, rt); returns (fn(a, b), result type)."""
        if op in ("<<", ">>"):
            pt = promote(lt)
            if isinstance(pt, FloatType):
                raise CompileError("shift of floating value", span)
            lc = make_conv(lt, pt)
            bits = pt.bits
            w = _int_wrapper(pt)
            left = op == "<<"

            def shift(a, b):
                b = _to_int(b)
                if b < 0 or b >= bits:
                    raise Trap(ILLEGAL_SHIFT, span, f"shift by {b} on {bits}-bit value")
                if lc is not None:
                    a = lc(a)
                return w(a << b) if left else w(a >> b)
            return shift, pt
        ct = common_type(lt, rt)
        lc, rc = make_conv(lt, ct), make_conv(rt, ct)
        if isinstance(ct, FloatType):
            base = _FLOAT_OPS.get(op)
            if base is None:
                raise CompileError(f"invalid operands to '{op}'", span)

            def fop(a, b):
                a = float(a)
                b = float(b)
                return base(a, b)
            return fop, ct
        w = _int_wrapper(ct)
        if op == "/" or op == "%":
            is_div = op == "/"

            def div(a, b):
                if lc is not None:
                    a = lc(a)
                if rc is not None:
                    b = rc(b)
                if b == 0:
                    raise Trap(DIV_ZERO, span)
                q = _cdiv(a, b)
                return w(q) if is_div else w(a - q * b)
            return div, ct
        base = _INT_OPS.get(op)
        if base is None:
            raise CompileError(f"invalid operands to '{op}'", span)
        if lc is None and rc is None:
            return (lambda a, b: w(base(a, b))), ct
        lc = lc or (lambda v: v)
        rc = rc or (lambda v: v)
        return (lambda a, b: w(base(lc(a), rc(b)))), ct

    def _binary(self, e: A.Binary):
        op = e.op
        if op in ("&&", "||"):
            lf = self._cond(e.left)
            rf = self._cond(e.right)
            if op == "&&":
                return (lambda f: 1 if (lf(f) and rf(f)) else 0), INT
            return (lambda f: 1 if (lf(f) or rf(f)) else 0), INT
        lf, lt = self.rv(e.left)
        rf, rt = self.rv(e.right)
        if isinstance(lt, (PointerType, FuncType)) or isinstance(rt, (PointerType, FuncType)):
            return self._pointer_binary(e, lf, lt, rf, rt)
        if op in _CMP_OPS:
            ct = common_type(lt, rt)
            lc, rc = make_conv(lt, ct), make_conv(rt, ct)
            cmp = _CMP_OPS[op]
            if lc is None and rc is None:
                return (lambda f: 1 if cmp(lf(f), rf(f)) else 0), INT
            lc = lc or (lambda v: v)
            rc = rc or (lambda v: v)
            return (lambda f: 1 if cmp(lc(lf(f)), rc(rf(f))) else 0), INT
        opfn, ct = self._arith_op(op, lt, rt, e.span)
        return (lambda f: opfn(lf(f), rf(f))), ct

    def _pointer_binary(self, e, lf, lt, rf, rt):
        op = e.op
        sp = e.span
        if op in ("==", "!="):
            eq = op == "=="

            def norm(v):
                return None if v == 0 and not isinstance(v, (Ptr, FuncRef)) else v
            return (lambda f: 1 if ((norm(lf(f)) == norm(rf(f))) == eq) else 0), INT
        if op in ("<", ">", "<=", ">="):
            cmp = _CMP_OPS[op]

            def pcmp(f):
                a, b = lf(f), rf(f)
                return 1 if cmp(a.idx if a else -1, b.idx if b else -1) else 0
            return pcmp, INT
        if op in ("+", "-") and isinstance(lt, PointerType) and not isinstance(rt, PointerType):
            sign = 1 if op == "+" else -1

            def padd(f):
                p = lf(f)
                if p is None:
                    raise Trap(OUT_OF_BOUNDS, sp, "arithmetic on null pointer")
                return Ptr(p.store, p.idx + sign * int(rf(f)))
            return padd, lt
        if op == "+" and isinstance(rt, PointerType):
            def padd2(f):
                p = rf(f)
                if p is None:
                    raise Trap(OUT_OF_BOUNDS, sp, "arithmetic on null pointer")
                return Ptr(p.store, p.idx + int(lf(f)))
            return padd2, rt
        if op == "-" and isinstance(lt, PointerType) and isinstance(rt, PointerType):
            def pdiff(f):
                a, b = lf(f), rf(f)
                if a is None or b is None or a.store is not b.store:
                    raise Trap(OUT_OF_BOUNDS, sp, "difference of unrelated pointers")
                return a.idx - b.idx
            return pdiff, _PTRDIFF
        raise CompileError(f"invalid pointer operation '{op}'", sp)

    # ================================================================ calls
    def _call(self, e: A.Call):
        func = e.func
        while isinstance(func, A.Paren):
            func = func.expr
        if isinstance(func, A.Ident):
            sym = self.res.lookup(func)
            if sym is not None and sym.kind == "builtin":
                return self._builtin(func.name, e)
            if sym is not None and sym.kind == "function":
                fn = self.functions.get(sym.name)
                if fn is None:
                    raise CompileError(f"function '{sym.name}' has no definition", e.span)
                ftype = sym.ctype
                args = self._call_args(e, ftype)
                ret = ftype.ret if isinstance(ftype, FuncType) else INT
                call = fn.call
                if len(args) == 1:
                    a0 = args[0]
                    return (lambda f: call([a0(f)])), ret
                return (lambda f: call([a(f) for a in args])), ret
        if isinstance(func, A.Unary) and func.op == "*":
            func = func.operand
        cf, ct = self.rv(func)
        ftype = ct.target if isinstance(ct, PointerType) else ct
        if not isinstance(ftype, FuncType):
            raise CompileError("called object is not a function", e.span)
        args = self._call_args(e, ftype)
        sp = e.span

        def call_ptr(f):
            ref = cf(f)
            if not isinstance(ref, FuncRef):
                raise Trap(OUT_OF_BOUNDS, sp, "call through invalid function pointer")
            return ref.fn.call([a(f) for a in args])
        return call_ptr, ftype.ret

    def _call_args(self, e: A.Call, ftype) -> list[Callable]:
        params = list(ftype.params) if isinstance(ftype, FuncType) else []
        if len(e.args) < len(params) or (len(e.args) > len(params) and not ftype.variadic):
            raise CompileError(f"wrong number of arguments ({len(e.args)} for {len(params)})", e.span)
        out = []
        for i, a in enumerate(e.args):
            if i < len(params):
                pt = self._param_type(params[i])
                out.append(self._converted(a, pt))
            else:
                out.append(self.rv(a)[0])
        return out

    def _builtin(self, name: str, e: A.Call):
        m = self.m
        sp = e.span
        args = [self.rv(a) for a in e.args]
        fns = [a[0] for a in args]
        if name in ("malloc", "calloc"):
            return self._alloc(e, CHAR), PointerType(VOID)
        if name == "free":
            pf = fns[0]

            def free(f):
                p = pf(f)
                if p is None:
                    return 0
                if not isinstance(p, Ptr) or p.idx != 0 or m.heap.get(id(p.store)) is not p.store:
                    raise Trap(FREE_INVALID, sp)
                del m.heap[id(p.store)]
                return 0
            return free, VOID
        if name == "realloc":
            pf, nf = fns

            def realloc(f):
                p = pf(f)
                nbytes = nf(f)
                if p is None:
                    store = []
                    esize = 1
                else:
                    if p.idx != 0 or id(p.store) not in m.heap:
                        raise Trap(FREE_INVALID, sp)
                    store = m.heap.pop(id(p.store))
                    esize = _elem_size(store)
                count = max(0, int(nbytes)) // esize
                new = [copy_value(x) for x in store[:count]]
                fill = copy_value(store[0]) if store else 0
                while len(new) < count:
                    new.append(_zero_like(fill))
                m.heap[id(new)] = new
                m.allocations += 1
                return Ptr(new, 0)
            return realloc, PointerType(VOID)
        if name == "printf":
            if not fns:
                raise CompileError("printf needs a format", sp)
            ff = fns[0]
            rest = fns[1:]
            types = [a[1] for a in args[1:]]

            def printf(f):
                text = _format(_cstring(ff(f)), [a(f) for a in rest], types)
                m.prints.append(text)
                return len(text)
            return printf, INT
        if name == "puts":
            sf = fns[0]

            def puts(f):
                m.prints.append(_cstring(sf(f)) + "\n")
                return 0
            return puts, INT
        if name == "putchar":
            cf = fns[0]

            def putchar(f):
                c = cf(f)
                m.prints.append(chr(c & 0xFF))
                return c
            return putchar, INT
        if name in ("abs", "labs"):
            xf, xt = args[0]
            t = promote(xt)
            w = _int_wrapper(t) if isinstance(t, IntType) else (lambda v: v)
            return (lambda f: w(abs(xf(f)))), t
        if name == "fabs":
            xf = fns[0]
            return (lambda f: abs(float(xf(f)))), DOUBLE
        if name == "sqrt":
            xf = fns[0]
            return (lambda f: math.sqrt(float(xf(f))) if xf(f) >= 0 else math.nan), DOUBLE
        if name == "memset":
            pf, vf, nf = fns

            def memset(f):
                p = pf(f)
                v = vf(f) & 0xFF
                store = p.store
                n = int(nf(f)) // max(1, _elem_size(store))
                if p.idx + n > len(store):
                    raise Trap(OUT_OF_BOUNDS, sp)
                for i in range(p.idx, p.idx + n):
                    store[i] = _fill_bytes(store[i], v)
                return p
            return memset, PointerType(VOID)
        if name == "memcpy":
            df, sf, nf = fns

            def memcpy(f):
                d, s = df(f), sf(f)
                n = int(nf(f)) // max(1, _elem_size(d.store))
                if d.idx + n > len(d.store) or s.idx + n > len(s.store):
                    raise Trap(OUT_OF_BOUNDS, sp)
                d.store[d.idx:d.idx + n] = [copy_value(x) for x in s.store[s.idx:s.idx + n]]
                return d
            return memcpy, PointerType(VOID)
        if name == "exit":
            cf = fns[0]

            def do_exit(f):
                raise _Exit(cf(f))
            return do_exit, VOID
        if name == "assert":
            cf = fns[0]

            def do_assert(f):
                if not cf(f):
                    raise Trap(ASSERTION, sp)
                return 0
            return do_assert, VOID
        raise CompileError(f"unsupported builtin '{name}'", sp)


class _CStr(Ptr):
    """String literal value: usable by printf and as a char pointer."""

    __slots__ = ("text",)

    def __init__(self, text: str, codes: list):
        super().__init__(list(codes), 0)
        self.text = text


def _cstring(v) -> str:
    if isinstance(v, _CStr) and v.idx == 0:
        return v.text
    if isinstance(v, Ptr):
        out = []
        for c in v.store[v.idx:]:
            if c == 0:
                break
            out.append(chr(c & 0xFF))
        return "".join(out)
    if v is None:
        return "(null)"
    return str(v)


def _format(fmt: str, args: list, types: list) -> str:
    out = []
    pos = 0
    ai = 0
    for mt in _PRINTF.finditer(fmt):
        out.append(fmt[pos:mt.start()])
        pos = mt.end()
        flags, width, prec, length, conv = mt.groups()
        if conv == "%":
            out.append("%")
            continue
        if width == "*":
            width = str(args[ai]) if ai < len(args) else ""
            ai += 1
        if prec == "*":
            prec = str(args[ai]) if ai < len(args) else ""
            ai += 1
        v = args[ai] if ai < len(args) else 0
        t = types[ai] if ai < len(types) else INT
        ai += 1
        spec = "%" + (flags or "") + (width or "") + ("." + prec if prec is not None else "")
        if conv in "di":
            out.append((spec + "d") % _to_int(v))
        elif conv in "ouxX":
            bits = 64 if length in ("l", "ll", "z", "j") else 32
            out.append((spec + ("d" if conv == "u" else conv)) % (_to_int(v) & ((1 << bits) - 1)))
        elif conv == "c":
            out.append((spec + "c") % chr(_to_int(v) & 0xFF))
        elif conv == "s":
            out.append((spec + "s") % _cstring(v))
        elif conv == "p":
            out.append(str(v))
        else:
            out.append((spec + conv) % float(v if v is not None else 0))
    out.append(fmt[pos:])
    return "".join(out)


def _elem_size(store: list) -> int:
    if not store:
        return 1
    v = store[0]
    if isinstance(v, StructVal):
        return v.type.size
    if isinstance(v, float):
        return 8
    if isinstance(v, (Ptr, FuncRef)) or v is None:
        return 8
    return 4


def _zero_like(v):
    if isinstance(v, StructVal):
        return StructVal(v.type, [_zero_like(x) for x in v.vals])
    if isinstance(v, list):
        return [_zero_like(x) for x in v]
    if isinstance(v, float):
        return 0.0
    if isinstance(v, (Ptr, FuncRef)) or v is None:
        return None
    return 0


def _fill_bytes(old, byte: int):
    if isinstance(old, StructVal):
        if byte:
            raise Trap(OUT_OF_BOUNDS, None, "memset of struct with non-zero byte")
        return _zero_like(old)
    if isinstance(old, float):
        return 0.0 if byte == 0 else old
    if isinstance(old, (Ptr, FuncRef)) or old is None:
        return None
    if byte == 0:
        return 0
    rep = byte | byte << 8 | byte << 16 | byte << 24
    return rep - (1 << 32) if rep >= 1 << 31 else rep


def _fdiv(a: float, b: float) -> float:
    if b == 0.0:
        if a == 0.0 or math.isnan(a):
            return math.nan
        return math.copysign(math.inf, a) * math.copysign(1.0, b)
    return a / b


_INT_OPS = {
    "+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b,
    "&": lambda a, b: a & b, "|": lambda a, b: a | b, "^": lambda a, b: a ^ b,
}
_FLOAT_OPS = {
    "+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b,
    "/": _fdiv,
}
_CMP_OPS = {
    "<": lambda a, b: a < b, ">": lambda a, b: a > b, "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b, "==": lambda a, b: a == b, "!=": lambda a, b: a != b,
}
