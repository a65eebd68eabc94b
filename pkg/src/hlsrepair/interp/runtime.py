"""Public execution API: run, profile, equivalent and dataset I/O."""
from __future__ import annotations

import json
import queue
import sys
import threading
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional, Union

from ..cfront import ast as A
from ..cfront.lexer import Span
from ..cfront.source import SourceUnit
from ..cfront.types import (ArrayType, BoolType, FloatType, IntType, PointerType, StructType,
                            VoidType)
from .machine import STACK_OVERFLOW, CompileError, Program, Trap, _Exit, make_conv
from .values import Ptr, StructVal, default_value, snapshot

DEFAULT_STEPS = 10**7
DEFAULT_DEPTH = 10**4
HIST_BINS = 64


class ExecError(ValueError):
    """Precondition violation: missing entry, missing argument, bad input shape."""


class ProfileError(Exception):
    pass


@dataclass
class ExecEnv:
    """One input record plus execution limits."""

    args: dict[str, Any] = field(default_factory=dict)
    arrays: dict[str, Any] = field(default_factory=dict)
    max_steps: int = DEFAULT_STEPS
    max_depth: int = DEFAULT_DEPTH

    @classmethod
    def from_json(cls, obj: dict) -> "ExecEnv":
        return cls(args=dict(obj.get("args", {})), arrays=dict(obj.get("arrays", {})))

    def to_json(self) -> dict:
        return {"args": self.args, "arrays": self.arrays}


@dataclass
class ExecResult:
    status: str  # OK | TRAP
    return_value: Any = None
    outputs: dict[str, Any] = field(default_factory=dict)
    prints: tuple[str, ...] = ()
    trap: Optional[str] = None
    span: Optional[Span] = None
    detail: str = ""
    steps: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "OK"

    def observables(self) -> tuple:
        if self.status == "TRAP":
            return ("TRAP", self.trap)
        return ("OK", _freeze(self.return_value), _freeze(self.outputs), "".join(self.prints))


def _freeze(v):
    if isinstance(v, dict):
        return tuple(sorted((k, _freeze(x)) for k, x in v.items()))
    if isinstance(v, list):
        return tuple(_freeze(x) for x in v)
    return v


# ---------------------------------------------------------------- deep-stack worker
class _DeepWorker:
    """Runs interpreter jobs on one thread with a large stack.

    Deeply recursive C programs recurse through many Python frames per call, far
    beyond the default thread stack.
    """

    STACK = 512 * 1024 * 1024

    def __init__(self):
        self._jobs: "queue.Queue" = queue.Queue()
        self._thread: Optional[threading.Thread] = None
        self._lock = threading.Lock()

    def _loop(self):
        while True:
            fn, box, done = self._jobs.get()
            try:
                box.append((True, fn()))
            except BaseException as e:  # noqa: BLE001 - re-raised on the caller side
                box.append((False, e))
            done.set()

    def _start(self):
        with self._lock:
            if self._thread is not None:
                return
            old = threading.stack_size()
            threading.stack_size(self.STACK)
            try:
                self._thread = threading.Thread(target=self._loop, name="interp", daemon=True)
                self._thread.start()
            finally:
                threading.stack_size(old)
            if sys.getrecursionlimit() < 400_000:
                sys.setrecursionlimit(400_000)

    def call(self, fn):
        if threading.current_thread() is self._thread:
            return fn()
        self._start()
        box: list = []
        done = threading.Event()
        with self._lock:
            pass
        self._jobs.put((fn, box, done))
        done.wait()
        ok, value = box[0]
        if ok:
            return value
        raise value


_worker = _DeepWorker()
_call_lock = threading.Lock()


# ---------------------------------------------------------------- compilation cache
def _unit_ast(unit) -> A.TranslationUnit:
    if isinstance(unit, SourceUnit):
        if unit.ast is None or not unit.ok:
            raise CompileError(f"{unit.name}: source does not parse")
        return unit.ast
    return unit


def compile_unit(unit, profile: bool = False) -> Program:
    """Compile (and cache) a unit; raises CompileError on unsupported constructs."""
    key = "program.profile" if profile else "program"
    if isinstance(unit, SourceUnit):
        cached = unit._cache.get(key)
        if isinstance(cached, CompileError):
            raise cached
        if cached is not None:
            return cached
        try:
            prog = Program(_unit_ast(unit), profile=profile)
        except CompileError as e:
            unit._cache[key] = e
            raise
        unit._cache[key] = prog
        return prog
    return Program(unit, profile=profile)


# ---------------------------------------------------------------- input marshalling
def _to_runtime(value, t):
    if value is None:
        return None
    if isinstance(t, PointerType):
        elem = t.target
        if isinstance(value, list):
            return Ptr([_to_runtime(v, elem) for v in value], 0)
        return Ptr([_to_runtime(value, elem)], 0)
    if isinstance(t, ArrayType):
        vals = [_to_runtime(v, t.elem) for v in value]
        if t.length is not None:
            vals = (vals + [default_value(t.elem) for _ in range(t.length)])[: t.length]
        return vals
    if isinstance(t, StructType):
        if not isinstance(value, dict):
            raise ExecError(f"expected an object for struct {t}")
        return StructVal(t, [_to_runtime(value[n], ft) if n in value else default_value(ft)
                             for n, ft in t.fields])
    if isinstance(t, (IntType, BoolType)):
        if isinstance(value, bool):
            value = int(value)
        if not isinstance(value, int):
            raise ExecError(f"expected an integer, got {value!r}")
        return t.wrap(value)
    if isinstance(t, FloatType):
        return float(value)
    return value


def _run_once(prog: Program, entry: str, env: ExecEnv) -> ExecResult:
    fn = prog.functions.get(entry)
    if fn is None:
        raise ExecError(f"entry function '{entry}' not found")
    params = prog.param_types(entry)
    missing = [n for n, _ in params if n not in env.args]
    if missing:
        raise ExecError(f"no value for parameter(s) {', '.join(missing)}")
    prog.start(env.max_steps, env.max_depth)
    outputs: dict[str, Any] = {}
    for name, value in env.arrays.items():
        sym = prog.global_symbol(name)
        if sym is None:
            raise ExecError(f"no global named '{name}'")
        storage = prog.global_storage(sym)
        if isinstance(sym.ctype, ArrayType):
            storage[:] = _to_runtime(value, sym.ctype)
        else:
            storage[0] = _to_runtime(value, sym.ctype)
        outputs[name] = storage
    args = []
    for name, t in params:
        v = _to_runtime(env.args[name], t)
        if isinstance(v, Ptr):
            outputs[name] = v.store
        args.append(v)
    m = prog.m
    try:
        ret = fn.call(args)
    except Trap as t:
        return ExecResult("TRAP", trap=t.kind, span=t.span, detail=t.detail, steps=m.steps,
                          prints=tuple(m.prints))
    except RecursionError:
        return ExecResult("TRAP", trap=STACK_OVERFLOW, span=fn.span, detail="host recursion limit",
                          steps=m.steps, prints=tuple(m.prints))
    except _Exit as ex:
        ret = f"exit({ex.code})"
    ftype = fn.ftype
    if ftype is not None and isinstance(ftype.ret, VoidType):
        ret = None
    out = {}
    for name, storage in outputs.items():
        out[name] = snapshot(storage[0]) if not isinstance(storage, list) or _is_box(prog, name, storage) \
            else snapshot(storage)
    return ExecResult("OK", return_value=snapshot(ret), outputs=out, prints=tuple(m.prints),
                      steps=m.steps)


def _is_box(prog: Program, name: str, storage) -> bool:
    sym = prog.global_symbol(name)
    return sym is not None and not isinstance(sym.ctype, ArrayType)


def run(unit: Union[SourceUnit, A.TranslationUnit], entry: str, env: ExecEnv) -> ExecResult:
    """Execute ``entry`` once. Runtime faults come back as TRAP results."""
    prog = compile_unit(unit)
    with _call_lock:
        return _worker.call(lambda: _run_once(prog, entry, env))


# ---------------------------------------------------------------- profiling
@dataclass
class VarStats:
    name: str
    function: str
    line: int
    declared: str
    declared_bits: int
    declared_signed: bool
    min: int
    max: int
    count: int
    values: Counter = field(default_factory=Counter, repr=False)

    def histogram(self, bins: int = HIST_BINS) -> list[int]:
        """Counts over ``bins`` equal-width bins spanning [min, max]."""
        out = [0] * bins
        width = (self.max - self.min + 1) / bins
        for v, c in self.values.items():
            i = min(bins - 1, int((v - self.min) / width))
            out[i] += c
        return out

    def merged(self, other: "VarStats") -> "VarStats":
        return VarStats(self.name, self.function, self.line, self.declared,
                        self.declared_bits, self.declared_signed, min(self.min, other.min), max(self.max, other.max),
                        self.count + other.count, self.values + other.values)


@dataclass
class RangeProfile:
    """Per-variable observed value ranges keyed by (function, declaration offset)."""

    vars: dict[tuple, VarStats] = field(default_factory=dict)
    rows: int = 0
    skipped: int = 0

    def __getitem__(self, key) -> VarStats:
        if isinstance(key, str):
            hit = self.by_name(key)
            if hit is None:
                raise KeyError(key)
            return hit
        return self.vars[key]

    def __contains__(self, key) -> bool:
        if isinstance(key, str):
            return self.by_name(key) is not None
        return key in self.vars

    def __iter__(self):
        return iter(self.vars.values())

    def __len__(self):
        return len(self.vars)

    def by_name(self, name: str, function: Optional[str] = None) -> Optional[VarStats]:
        for s in self.vars.values():
            if s.name == name and (function is None or s.function == function):
                return s
        return None

    def merge(self, other: "RangeProfile") -> "RangeProfile":
        out = dict(self.vars)
        for k, s in other.vars.items():
            out[k] = out[k].merged(s) if k in out else s
        return RangeProfile(out, self.rows + other.rows, self.skipped + other.skipped)

    def to_json(self) -> list[dict]:
        return [{"name": s.name, "function": s.function, "line": s.line, "declared": s.declared,
                 "min": s.min, "max": s.max, "count": s.count}
                for s in sorted(self.vars.values(), key=lambda s: (s.line, s.name))]


def _profile_rows(prog: Program, entry: str, dataset: list[ExecEnv]) -> RangeProfile:
    total: dict[tuple, Counter] = {}
    ok = skipped = 0
    for env in dataset:
        for d in prog.samples.values():
            d.clear()
        res = _run_once(prog, entry, env)
        if not res.ok:
            skipped += 1
            continue
        ok += 1
        for key, d in prog.samples.items():
            if d:
                total.setdefault(key, Counter()).update(d)
    out = {}
    for key, counts in total.items():
        sym = prog.sample_names[key]
        t = prog.sample_types[key]
        out[key] = VarStats(sym.name, sym.function or "", sym.line, str(t), t.bits, t.signed,
                            min(counts), max(counts), sum(counts.values()), counts)
    return RangeProfile(out, ok, skipped)


def profile(unit, entry: str, dataset: Iterable[ExecEnv]) -> RangeProfile:
    """Observed min/max of every integer variable over the dataset's OK rows."""
    rows = list(dataset)
    prog = compile_unit(unit, profile=True)
    with _call_lock:
        prof = _worker.call(lambda: _profile_rows(prog, entry, rows))
    if prof.rows == 0:
        raise ProfileError(f"no dataset row completed OK ({prof.skipped} trapped)")
    return prof


# ---------------------------------------------------------------- equivalence
@dataclass
class EquivalenceVerdict:
    equivalent: bool
    rows: int
    index: Optional[int] = None
    env: Optional[ExecEnv] = None
    left: Optional[ExecResult] = None
    right: Optional[ExecResult] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.equivalent

    def describe(self) -> str:
        if self.equivalent:
            return f"EQUIVALENT over {self.rows} rows"
        if self.index is None:
            return f"NOT EQUIVALENT: {self.reason}"
        return (f"NOT EQUIVALENT at row {self.index}: {self.reason}")


def _diff(a: ExecResult, b: ExecResult) -> str:
    if a.status != b.status or a.trap != b.trap:
        return f"status {a.status}{'/' + a.trap if a.trap else ''} vs {b.status}{'/' + b.trap if b.trap else ''}"
    if a.return_value != b.return_value:
        return f"return value {a.return_value!r} vs {b.return_value!r}"
    if a.outputs != b.outputs:
        for k in sorted(set(a.outputs) | set(b.outputs)):
            if a.outputs.get(k) != b.outputs.get(k):
                return f"output '{k}' differs"
    return "print log differs"


def equivalent(a, b, entry: str, dataset: Iterable[ExecEnv], *, where_a_ok: bool = False) -> EquivalenceVerdict:
    """Observable equality on every row.

    With ``where_a_ok`` rows on which ``a`` traps are left out: a repair may give
    meaning to inputs the original program has none for.
    """
    rows = list(dataset)
    if not rows:
        raise ExecError("equivalence needs at least one dataset row")
    try:
        pa, pb = compile_unit(a), compile_unit(b)
    except CompileError as e:
        return EquivalenceVerdict(False, 0, reason=f"does not compile: {e}")

    def work():
        compared = 0
        for i, env in enumerate(rows):
            try:
                ra = _run_once(pa, entry, env)
                if where_a_ok and not ra.ok:
                    continue
                rb = _run_once(pb, entry, env)
            except ExecError as e:
                return EquivalenceVerdict(False, i, i, env, reason=str(e))
            if ra.observables() != rb.observables():
                return EquivalenceVerdict(False, i, i, env, ra, rb, _diff(ra, rb))
            compared += 1
        if compared == 0:
            return EquivalenceVerdict(False, 0, reason="no row completed on the reference program")
        return EquivalenceVerdict(True, compared)

    with _call_lock:
        return _worker.call(work)


# ---------------------------------------------------------------- dataset files
def load_dataset(path: Union[str, Path]) -> list[ExecEnv]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise ExecError(f"{path}:{n}: {e.msg}") from e
            if not isinstance(obj, dict):
                raise ExecError(f"{path}:{n}: expected an object")
            out.append(ExecEnv.from_json(obj))
    return out


def save_dataset(path: Union[str, Path], rows: Iterable[ExecEnv]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for env in rows:
            fh.write(json.dumps(env.to_json(), separators=(",", ":")) + "\n")
