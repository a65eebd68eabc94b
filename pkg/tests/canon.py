"""One small offending program per class; the detector's line for it is the
canonical retrieval query of that class."""
from __future__ import annotations

import re

from hlsrepair.cfront import SourceUnit
from hlsrepair.detect import ErrorClass, check
from hlsrepair.interp import ExecEnv, profile

PROGRAMS = {
    ErrorClass.T1_POINTER: "int sum(int **rows, int n) { int s = 0; for (int i = 0; i < n; i++) s += rows[i][0]; return s; }",
    ErrorClass.T2_DYNAMIC_ARRAY: "#include <stdlib.h>\nint f(int n) { int *buf = malloc(n * sizeof(int)); buf[0] = n; int r = buf[0]; free(buf); return r; }",
    ErrorClass.T3_RECURSION: "int BFS(int level) { if (level == 0) return 0; return 1 + BFS(level - 1); }",
    ErrorClass.T4_BIT_WIDTH: "unsigned int f(unsigned int x) { unsigned int m = x & 255u; return m; }",
    ErrorClass.T5_BOOLEAN_OP: "int f(int x) { bool b = false; b += x; return b; }",
    ErrorClass.T6_INCOMPLETE_STATEMENT: "int f(int x) { int r = 0; switch (x) { case 0: r = 1; break; case 1: r = 2; break; } return r; }",
    ErrorClass.T7_UNSUPPORTED_STRUCT: "int inc(int v) { return v + 1; }\nint f(int x) { int (*op)(int) = inc; return op(x); }",
    ErrorClass.T8_EXCEPTION: "int f(void) { int a[10]; a[10] = 1; return a[0]; }",
}


def canonical_log(cls: ErrorClass) -> str:
    u = SourceUnit.from_bytes("canon.c", PROGRAMS[cls])
    if cls is ErrorClass.T4_BIT_WIDTH:
        rep = check(u, profile=profile(u, "f", [ExecEnv(args={"x": v}) for v in (0, 200)]))
    else:
        rep = check(u)
    lines = [ln for ln in rep.log.splitlines() if f"[{cls.keyword}]" in ln]
    assert lines, (cls, rep.log)
    return lines[0]


def mutate(log: str, rng) -> str:
    """Fresh identifiers in quotes and fresh line numbers; the message shape stays."""
    def ident(_):
        first = rng.choice("abcdefghijklmnopqrstuvwxyz_")
        rest = "".join(rng.choice("abcdefghijklmnopqrstuvwxyz0123456789_") for _ in range(rng.randint(0, 10)))
        return f"'{first}{rest}'"
    out = re.sub(r"'[^']*'", ident, log)
    return re.sub(r"line \d+", lambda _: f"line {rng.randint(1, 5000)}", out)
