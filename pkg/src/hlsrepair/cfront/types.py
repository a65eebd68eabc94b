"""Semantic C types and the type context built from a translation unit."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import ast as A


class CType:
    size = 0

    @property
    def is_integer(self) -> bool:
        return False

    @property
    def is_scalar(self) -> bool:
        return False


@dataclass(frozen=True)
class VoidType(CType):
    def __str__(self):
        return "void"


@dataclass(frozen=True)
class IntType(CType):
    bits: int
    signed: bool
    name: str
    hls: bool = False

    @property
    def is_integer(self) -> bool:
        return True

    @property
    def is_scalar(self) -> bool:
        return True

    @property
    def size(self) -> int:
        for s in (1, 2, 4, 8):
            if self.bits <= 8 * s:
                return s
        return (self.bits + 7) // 8

    @property
    def lo(self) -> int:
        return -(1 << (self.bits - 1)) if self.signed else 0

    @property
    def hi(self) -> int:
        return (1 << (self.bits - 1)) - 1 if self.signed else (1 << self.bits) - 1

    def wrap(self, v: int) -> int:
        v &= (1 << self.bits) - 1
        if self.signed and v >> (self.bits - 1):
            v -= 1 << self.bits
        return v

    def __str__(self):
        if self.hls:
            return f"ac_int<{self.bits}, {'true' if self.signed else 'false'}>"
        return self.name


@dataclass(frozen=True)
class BoolType(CType):
    size = 1

    @property
    def is_integer(self) -> bool:
        return True

    @property
    def is_scalar(self) -> bool:
        return True

    bits = 1
    signed = False

    def wrap(self, v) -> int:
        return 1 if v else 0

    def __str__(self):
        return "bool"


@dataclass(frozen=True)
class FloatType(CType):
    bits: int

    @property
    def is_scalar(self) -> bool:
        return True

    @property
    def size(self) -> int:
        return self.bits // 8

    def __str__(self):
        return "float" if self.bits == 32 else "double"


@dataclass(frozen=True)
class PointerType(CType):
    target: CType
    size = 8

    @property
    def is_scalar(self) -> bool:
        return True

    def __str__(self):
        return f"{self.target}*"


@dataclass(frozen=True)
class ArrayType(CType):
    elem: CType
    length: Optional[int]

    @property
    def size(self) -> int:
        return self.elem.size * (self.length or 0)

    def __str__(self):
        return f"{self.elem}[{self.length if self.length is not None else ''}]"


@dataclass(eq=False)
class StructType(CType):
    tag: Optional[str]
    fields: list = field(default_factory=list)  # [(name, CType)]
    union: bool = False
    complete: bool = False

    @property
    def size(self) -> int:
        if self.union:
            return max((t.size for _, t in self.fields), default=0)
        total = 0
        for _, t in self.fields:
            align = min(max(_align(t), 1), 8)
            total = (total + align - 1) // align * align + t.size
        align = max((min(max(_align(t), 1), 8) for _, t in self.fields), default=1)
        return (total + align - 1) // align * align

    def field_type(self, name: str) -> Optional[CType]:
        for n, t in self.fields:
            if n == name:
                return t
        return None

    def __hash__(self):
        return id(self)

    def __str__(self):
        return f"struct {self.tag or '<anon>'}"


@dataclass(frozen=True)
class FuncType(CType):
    ret: CType
    params: tuple = ()
    variadic: bool = False
    size = 1

    def __str__(self):
        return f"{self.ret}({', '.join(map(str, self.params))})"


def _align(t: CType) -> int:
    if isinstance(t, ArrayType):
        return _align(t.elem)
    if isinstance(t, StructType):
        return max((_align(f) for _, f in t.fields), default=1)
    return t.size


VOID = VoidType()
BOOL = BoolType()
CHAR = IntType(8, True, "char")
INT = IntType(32, True, "int")
UINT = IntType(32, False, "unsigned int")
LONG = IntType(64, True, "long")
ULONG = IntType(64, False, "unsigned long")
LLONG = IntType(64, True, "long long")
DOUBLE = FloatType(64)

BASE_TYPES = {
    "void": VOID,
    "bool": BOOL,
    "char": CHAR,
    "signed char": IntType(8, True, "signed char"),
    "unsigned char": IntType(8, False, "unsigned char"),
    "short": IntType(16, True, "short"),
    "unsigned short": IntType(16, False, "unsigned short"),
    "int": INT,
    "unsigned int": UINT,
    "long": LONG,
    "unsigned long": ULONG,
    "long long": LLONG,
    "unsigned long long": IntType(64, False, "unsigned long long"),
    "float": FloatType(32),
    "double": DOUBLE,
    "long double": DOUBLE,
}

# Names every program may use without declaring them.
BUILTIN_FUNCTIONS = {
    "malloc", "calloc", "realloc", "free", "printf", "puts", "putchar", "abs",
    "labs", "fabs", "sqrt", "memset", "memcpy", "exit", "assert",
}
BUILTIN_CONSTANTS = {"NULL": None, "INT_MAX": 2**31 - 1, "INT_MIN": -(2**31),
                     "UINT_MAX": 2**32 - 1, "true": 1, "false": 0}


def hls_int(bits: int, signed: bool) -> IntType:
    return IntType(bits, signed, "ac_int", hls=True)


class TypeError_(Exception):
    pass


class TypeContext:
    """Typedefs, struct tags, enum constants and defines of one unit."""

    def __init__(self, unit: A.TranslationUnit):
        self.typedefs: dict[str, CType] = {}
        self.structs: dict[str, StructType] = {}
        self.enum_constants: dict[str, int] = {}
        self.enums: dict[str, dict[str, int]] = {}
        self.defines: dict[str, A.Expr] = {}
        self._anon: dict[int, CType] = {}
        self.typedef_enums: dict[str, set[int]] = {}
        for item in unit.items:
            self.register(item)

    def register(self, item: A.Node) -> None:
        if isinstance(item, A.Define) and item.value is not None:
            self.defines[item.name] = item.value
        elif isinstance(item, A.Declaration):
            base = self.spec_type(item.spec)
            if "typedef" in item.storage:
                for d in item.declarators:
                    self.typedefs[d.name] = self.derive(base, d.derivs)
                    vals = self.enum_values_of(item.spec)
                    if vals is not None and not d.derivs:
                        self.typedef_enums[d.name] = vals

    # ---------------------------------------------------------------- specs
    def spec_type(self, spec: A.TypeSpec) -> CType:
        if spec.struct is not None:
            return self._struct(spec.struct)
        if spec.enum is not None:
            self._enum(spec.enum)
            return INT
        if spec.base in ("ac_int", "ac_uint"):
            args = [self.const_eval(a) for a in spec.template_args]
            if not args or args[0] is None or args[0] < 1:
                raise TypeError_(f"{spec.base} needs a constant positive width")
            signed = spec.base == "ac_int"
            if spec.base == "ac_int" and len(args) > 1:
                signed = bool(args[1])
            return hls_int(args[0], signed)
        if spec.base in BASE_TYPES:
            return BASE_TYPES[spec.base]
        if spec.base in self.typedefs:
            return self.typedefs[spec.base]
        raise TypeError_(f"unknown type '{spec.base}'")

    def _struct(self, s: A.StructSpec) -> StructType:
        if s.tag is not None:
            st = self.structs.get(s.tag)
            if st is None:
                st = StructType(s.tag, union=s.union)
                self.structs[s.tag] = st
        else:
            key = id(s)
            st = self._anon.get(key)
            if st is None:
                st = StructType(None, union=s.union)
                self._anon[key] = st
        if s.members is not None and not st.complete:
            st.complete = True
            for m in s.members:
                mbase = self.spec_type(m.spec)
                for d in m.declarators:
                    st.fields.append((d.name, self.derive(mbase, d.derivs)))
        return st

    def _enum(self, e: A.EnumSpec) -> None:
        if e.enumerators is None:
            return
        values = {}
        nxt = 0
        for en in e.enumerators:
            if en.value is not None:
                v = self.const_eval(en.value)
                nxt = v if v is not None else nxt
            values[en.name] = nxt
            self.enum_constants[en.name] = nxt
            nxt += 1
        if e.tag:
            self.enums[e.tag] = values

    def enum_values_of(self, spec: A.TypeSpec) -> Optional[set[int]]:
        """Enumerator values when ``spec`` names an enum type, else ``None``."""
        if spec.enum is not None:
            if spec.enum.enumerators is not None:
                return {self.enum_constants[e.name] for e in spec.enum.enumerators}
            if spec.enum.tag in self.enums:
                return set(self.enums[spec.enum.tag].values())
        return self.typedef_enums.get(spec.base)

    def derive(self, base: CType, derivs) -> CType:
        t = base
        for d in reversed(derivs):
            if isinstance(d, A.PointerDeriv):
                t = PointerType(t)
            elif isinstance(d, A.ArrayDeriv):
                n = self.const_eval(d.size) if d.size is not None else None
                t = ArrayType(t, n)
            else:
                params = []
                for p in d.params:
                    pt = self.derive(self.spec_type(p.spec), p.declarator.derivs)
                    if isinstance(pt, ArrayType):
                        pt = PointerType(pt.elem)
                    params.append(pt)
                t = FuncType(t, tuple(params), d.variadic)
        return t

    def declared_type(self, spec: A.TypeSpec, decl: A.Declarator) -> CType:
        return self.derive(self.spec_type(spec), decl.derivs)

    def typename(self, tn: A.TypeName) -> CType:
        return self.declared_type(tn.spec, tn.declarator)

    # ------------------------------------------------------------- constants
    def const_eval(self, e: Optional[A.Expr], _depth: int = 0) -> Optional[int]:
        if e is None or _depth > 50:
            return None
        ev = lambda x: self.const_eval(x, _depth + 1)  # noqa: E731
        if isinstance(e, (A.IntLit, A.CharLit)):
            return e.value
        if isinstance(e, A.BoolLit):
            return int(e.value)
        if isinstance(e, A.Paren):
            return ev(e.expr)
        if isinstance(e, A.Ident):
            if e.name in self.enum_constants:
                return self.enum_constants[e.name]
            if e.name in self.defines:
                return ev(self.defines[e.name])
            v = BUILTIN_CONSTANTS.get(e.name)
            return v if isinstance(v, int) else None
        if isinstance(e, A.Unary):
            v = ev(e.operand)
            if v is None:
                return None
            return {"-": -v, "+": v, "~": ~v, "!": int(not v)}.get(e.op)
        if isinstance(e, A.Binary):
            a, b = ev(e.left), ev(e.right)
            if a is None or b is None:
                return None
            try:
                return _BINOPS[e.op](a, b)
            except (ZeroDivisionError, KeyError, ValueError):
                return None
        if isinstance(e, A.Ternary):
            c = ev(e.cond)
            if c is None:
                return None
            return ev(e.then) if c else ev(e.otherwise)
        if isinstance(e, A.SizeofType):
            try:
                return self.typename(e.type).size
            except TypeError_:
                return None
        if isinstance(e, A.Cast):
            v = ev(e.expr)
            try:
                t = self.typename(e.type)
            except TypeError_:
                return None
            if v is not None and isinstance(t, (IntType, BoolType)):
                return t.wrap(v)
            return None
        return None


def _cdiv(a: int, b: int) -> int:
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _cmod(a: int, b: int) -> int:
    return a - _cdiv(a, b) * b


_BINOPS = {
    "+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b,
    "/": _cdiv, "%": _cmod, "<<": lambda a, b: a << b, ">>": lambda a, b: a >> b,
    "&": lambda a, b: a & b, "|": lambda a, b: a | b, "^": lambda a, b: a ^ b,
    "<": lambda a, b: int(a < b), ">": lambda a, b: int(a > b),
    "<=": lambda a, b: int(a <= b), ">=": lambda a, b: int(a >= b),
    "==": lambda a, b: int(a == b), "!=": lambda a, b: int(a != b),
    "&&": lambda a, b: int(bool(a and b)), "||": lambda a, b: int(bool(a or b)),
}
