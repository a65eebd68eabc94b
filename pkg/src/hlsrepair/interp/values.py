"""Runtime values: pointers, structs and copy/snapshot helpers."""
from __future__ import annotations

from ..cfront.types import (ArrayType, BoolType, CType, FloatType, IntType, PointerType,
                            StructType)


class Ptr:
    """Pointer into a Python list (array storage, a boxed scalar, or struct fields)."""

    __slots__ = ("store", "idx")

    def __init__(self, store: list, idx: int = 0):
        self.store = store
        self.idx = idx

    def __eq__(self, other):
        return isinstance(other, Ptr) and other.store is self.store and other.idx == self.idx

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((id(self.store), self.idx))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"<ptr +{self.idx}>"


class StructVal:
    __slots__ = ("type", "vals")

    def __init__(self, type: StructType, vals: list):
        self.type = type
        self.vals = vals

    def __repr__(self):
        return "{" + ", ".join(f"{n}={v!r}" for (n, _), v in zip(self.type.fields, self.vals)) + "}"


class FuncRef:
    __slots__ = ("fn",)

    def __init__(self, fn):
        self.fn = fn

    def __eq__(self, other):
        return isinstance(other, FuncRef) and other.fn is self.fn

    def __hash__(self):
        return id(self.fn)

    def __repr__(self):
        return f"<fn {self.fn.name}>"


def default_value(t: CType):
    if isinstance(t, (IntType, BoolType)):
        return 0
    if isinstance(t, FloatType):
        return 0.0
    if isinstance(t, ArrayType):
        return [default_value(t.elem) for _ in range(t.length or 0)]
    if isinstance(t, StructType):
        return StructVal(t, [default_value(ft) for _, ft in t.fields])
    if isinstance(t, PointerType):
        return None
    return 0


def copy_value(v):
    if isinstance(v, StructVal):
        return StructVal(v.type, [copy_value(x) for x in v.vals])
    if isinstance(v, list):
        return [copy_value(x) for x in v]
    return v


def snapshot(v):
    """Plain-data view of a runtime value, used for observables."""
    if isinstance(v, StructVal):
        return {n: snapshot(x) for (n, _), x in zip(v.type.fields, v.vals)}
    if isinstance(v, list):
        return [snapshot(x) for x in v]
    if isinstance(v, Ptr):
        return f"<ptr+{v.idx}>"
    if v is None:
        return "NULL"
    if isinstance(v, FuncRef):
        return f"<fn {v.fn.name}>"
    return v
