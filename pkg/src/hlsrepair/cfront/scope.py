"""Name resolution: binds every identifier use to its declaration."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import ast as A
from .types import BUILTIN_CONSTANTS, BUILTIN_FUNCTIONS, CType, TypeContext, TypeError_


@dataclass(eq=False)
class Symbol:
    name: str
    kind: str  # global | local | param | function | enum | define | builtin
    ctype: Optional[CType]
    node: Optional[A.Node]
    function: Optional[str] = None
    decl: Optional[A.Node] = None
    spec: Optional[A.TypeSpec] = None

    @property
    def uid(self) -> tuple[str, int]:
        """Variable identity: (enclosing function, declaration offset)."""
        start = self.node.span.start if self.node is not None and self.node.span else -1
        return (self.function or "", start)

    @property
    def line(self) -> int:
        return self.node.span.line if self.node is not None and self.node.span else 0

    @property
    def is_variable(self) -> bool:
        return self.kind in ("global", "local", "param")

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.kind}, {self.ctype}, fn={self.function})"


class Resolution:
    def __init__(self, unit: A.TranslationUnit):
        self.unit = unit
        self.ctx = TypeContext.__new__(TypeContext)
        TypeContext.__init__(self.ctx, A.TranslationUnit(()))
        self.bindings: dict[int, Symbol] = {}
        self.unresolved: list[A.Ident] = []
        self.variables: list[Symbol] = []
        self.functions: dict[str, A.FunctionDef] = {}
        self.function_symbols: dict[str, Symbol] = {}
        self.type_errors: list[tuple[A.Node, str]] = []
        self.uses: dict[int, list[A.Ident]] = {}
        self._scopes: list[dict[str, Symbol]] = [{}]
        self._fn: Optional[str] = None
        for name in BUILTIN_FUNCTIONS:
            self._scopes[0][name] = Symbol(name, "builtin", None, None)
        for name in BUILTIN_CONSTANTS:
            self._scopes[0][name] = Symbol(name, "builtin", None, None)
        for item in unit.items:
            self._item(item)

    # ------------------------------------------------------------ api
    def lookup(self, ident: A.Ident) -> Optional[Symbol]:
        return self.bindings.get(id(ident))

    def uses_of(self, sym: Symbol) -> list[A.Ident]:
        return self.uses.get(id(sym), [])

    # ------------------------------------------------------------ walking
    def _declare(self, sym: Symbol) -> None:
        self._scopes[-1][sym.name] = sym
        if sym.is_variable:
            self.variables.append(sym)

    def _type(self, spec, declarator, node) -> Optional[CType]:
        try:
            return self.ctx.declared_type(spec, declarator)
        except TypeError_ as e:
            self.type_errors.append((node, str(e)))
            return None

    def _item(self, item: A.Stmt) -> None:
        if isinstance(item, A.Define):
            self.ctx.register(item)
            self._declare(Symbol(item.name, "define", None, item))
            if item.value is not None:
                self._expr(item.value)
        elif isinstance(item, A.FunctionDef):
            self._function(item)
        elif isinstance(item, A.Declaration):
            self._declaration(item, "global")

    def _function(self, fn: A.FunctionDef) -> None:
        try:
            ftype = self.ctx.declared_type(fn.spec, fn.declarator)
        except TypeError_ as e:
            self.type_errors.append((fn, str(e)))
            ftype = None
        sym = Symbol(fn.name, "function", ftype, fn, None, fn, fn.spec)
        self._scopes[0][fn.name] = sym
        self.functions[fn.name] = fn
        self.function_symbols[fn.name] = sym
        self._fn = fn.name
        self._scopes.append({})
        for p in fn.params:
            self._derivs(p.declarator.derivs)
            if p.declarator.name:
                t = self._type(p.spec, p.declarator, p)
                self._declare(Symbol(p.declarator.name, "param", t, p.declarator, fn.name, p, p.spec))
        self._block(fn.body, new_scope=False)
        self._scopes.pop()
        self._fn = None

    def _declaration(self, d: A.Declaration, kind: str) -> None:
        self._enum_constants(d.spec)
        self.ctx.register(d)
        self._spec_exprs(d.spec)
        if "typedef" in d.storage:
            return
        if d.spec.struct is not None and d.spec.struct.members is not None:
            self._type(d.spec, A.Declarator(None), d)
        for decl in d.declarators:
            self._derivs(decl.derivs)
            t = self._type(d.spec, decl, decl)
            from .types import FuncType
            k = "function" if isinstance(t, FuncType) and kind == "global" else kind
            sym = Symbol(decl.name, k, t, decl, self._fn, d, d.spec)
            if k == "function":
                self._scopes[0].setdefault(decl.name, sym)
                self.function_symbols.setdefault(decl.name, sym)
            else:
                self._declare(sym)
            if decl.init is not None:
                self._expr(decl.init)

    def _enum_constants(self, spec: A.TypeSpec) -> None:
        if spec.enum is not None and spec.enum.enumerators:
            for en in spec.enum.enumerators:
                if en.value is not None:
                    self._expr(en.value)
                self._declare(Symbol(en.name, "enum", None, en, self._fn))

    def _spec_exprs(self, spec: A.TypeSpec) -> None:
        for a in spec.template_args:
            self._expr(a)
        if spec.struct is not None and spec.struct.members:
            for m in spec.struct.members:
                self._enum_constants(m.spec)
                for decl in m.declarators:
                    self._derivs(decl.derivs)

    def _derivs(self, derivs) -> None:
        for dv in derivs:
            if isinstance(dv, A.ArrayDeriv) and dv.size is not None:
                self._expr(dv.size)

    def _block(self, block: A.Block, new_scope: bool = True) -> None:
        if new_scope:
            self._scopes.append({})
        for s in block.items:
            self._stmt(s)
        if new_scope:
            self._scopes.pop()

    def _stmt(self, s: A.Stmt) -> None:
        if isinstance(s, A.Block):
            self._block(s)
        elif isinstance(s, A.Declaration):
            self._declaration(s, "local")
        elif isinstance(s, A.Define):
            self._item(s)
        elif isinstance(s, A.ExprStmt):
            if s.expr is not None:
                self._expr(s.expr)
        elif isinstance(s, A.If):
            self._expr(s.cond)
            self._scoped(s.then)
            if s.otherwise is not None:
                self._scoped(s.otherwise)
        elif isinstance(s, A.While):
            self._expr(s.cond)
            self._scoped(s.body)
        elif isinstance(s, A.DoWhile):
            self._scoped(s.body)
            self._expr(s.cond)
        elif isinstance(s, A.For):
            self._scopes.append({})
            if s.init is not None:
                self._stmt(s.init)
            if s.cond is not None:
                self._expr(s.cond)
            if s.step is not None:
                self._expr(s.step)
            self._scoped(s.body)
            self._scopes.pop()
        elif isinstance(s, A.Switch):
            self._expr(s.expr)
            self._scoped(s.body)
        elif isinstance(s, A.Case):
            self._expr(s.value)
        elif isinstance(s, A.Return):
            if s.expr is not None:
                self._expr(s.expr)

    def _scoped(self, s: A.Stmt) -> None:
        if isinstance(s, A.Block):
            self._block(s)
        else:
            self._scopes.append({})
            self._stmt(s)
            self._scopes.pop()

    def _find(self, name: str) -> Optional[Symbol]:
        for scope in reversed(self._scopes):
            if name in scope:
                return scope[name]
        return None

    def _expr(self, e: A.Expr) -> None:
        for node in e.walk():
            if isinstance(node, A.Ident):
                sym = self._find(node.name)
                if sym is None:
                    self.unresolved.append(node)
                else:
                    self.bindings[id(node)] = sym
                    self.uses.setdefault(id(sym), []).append(node)
            elif isinstance(node, (A.SizeofType, A.Cast)):
                tn = node.type
                self._spec_exprs(tn.spec)


def resolve(unit: A.TranslationUnit) -> Resolution:
    return Resolution(unit)
