"""The checker: run every detector and assemble a CompileReport."""
from __future__ import annotations

import re
import shlex
import subprocess
import tempfile
from pathlib import Path
from typing import Iterable, Optional

from ..cfront import ast as A
from ..cfront.lexer import LexError
from ..cfront.source import SourceUnit
from . import detectors as D
from .diagnostics import CompileReport, Diagnostic, ErrorClass, Severity, make

_ORDER = {c: i for i, c in enumerate(ErrorClass)}
_LOG_LINE = re.compile(r"\b(ERROR|ADVISORY)\s*\[(\w+)\]")


def _sort(diags: Iterable[Diagnostic]) -> list[Diagnostic]:
    uniq = {}
    for d in diags:
        uniq.setdefault((d.error_class, d.span.start if d.span else -1, d.message), d)
    return sorted(uniq.values(), key=lambda d: (d.span.start if d.span else -1,
                                                _ORDER[d.error_class], d.message))


def syntax_diagnostics(unit: SourceUnit) -> list[Diagnostic]:
    out = []
    for e in unit.errors:
        span = getattr(e, "span", None)
        line = span.line if span else 0
        msg = getattr(e, "message", None) or str(e)
        out.append(make(ErrorClass.SYNTAX, span, f"{msg} at line {line}", "syntax"))
    return out


def semantic_diagnostics(ctx: D.Context) -> list[Diagnostic]:
    out = []
    for ident in ctx.res.unresolved:
        out.append(make(ErrorClass.SYNTAX, ident.span,
                        f"use of undeclared identifier '{ident.name}' at line {ident.span.line if ident.span else 0}",
                        ident.name))
    for node, msg in ctx.res.type_errors:
        line = node.span.line if node.span else 0
        out.append(make(ErrorClass.SYNTAX, node.span, f"{msg} at line {line}", "type"))
    return out


def check(unit: SourceUnit, profile=None, dataset=None, entry: Optional[str] = None,
          compile_cmd: Optional[str] = None) -> CompileReport:
    """Run all detectors over ``unit``.

    ``profile`` enables the bit-width advisories; ``dataset`` with ``entry``
    enables trap-backed exception diagnostics.
    """
    if compile_cmd:
        return external_check(unit, compile_cmd)
    if not unit.ok:
        return CompileReport(_sort(syntax_diagnostics(unit) + D.detect_virtual(unit.tokens)), parsed=False)
    ctx = D.Context.of(unit.ast)
    diags: list[Diagnostic] = []
    diags += semantic_diagnostics(ctx)
    diags += D.detect_pointer(ctx)
    diags += D.detect_dynamic(ctx)
    diags += D.detect_recursion(ctx)
    if profile is not None:
        diags += D.detect_bitwidth(ctx, profile)
    diags += D.detect_boolean(ctx)
    diags += D.detect_incomplete(ctx)
    diags += D.detect_unsupported(ctx)
    static8 = D.detect_exception_static(ctx)
    diags += static8
    if dataset is not None and entry is not None and not ctx.res.unresolved:
        taken = {d.span.start for d in static8 if d.span}
        diags += [d for d in D.detect_exception_dynamic(unit, entry, dataset)
                  if d.span.start not in taken]
    return CompileReport(_sort(diags))


def external_check(unit: SourceUnit, compile_cmd: str, timeout: float = 600.0) -> CompileReport:
    """Run a user-supplied compiler; its output becomes the raw log.

    ``{file}`` in the command is replaced by a temporary copy of the unit;
    without it the path is appended. Lines shaped like ``ERROR [KEYWORD]`` are
    mapped back to diagnostics; a non-zero exit with no such lines yields one
    SYNTAX error.
    """
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / (Path(unit.name).name or "input.c")
        path.write_bytes(unit.raw)
        if "{file}" in compile_cmd:
            cmd = compile_cmd.replace("{file}", shlex.quote(str(path)))
        else:
            cmd = f"{compile_cmd} {shlex.quote(str(path))}"
        proc = subprocess.run(cmd, shell=True, capture_output=True, text=True, timeout=timeout)
    log = (proc.stdout + proc.stderr).strip()
    diags = []
    for line in log.splitlines():
        m = _LOG_LINE.search(line)
        if not m:
            continue
        try:
            cls = ErrorClass.parse(m.group(2))
        except ValueError:
            cls = ErrorClass.SYNTAX
        sev = Severity(m.group(1))
        diags.append(Diagnostic(cls, None, line.strip(), sev, ""))
    if proc.returncode != 0 and not any(d.is_error for d in diags):
        diags.append(Diagnostic(ErrorClass.SYNTAX, None,
                                f"ERROR [SYNTAX]: external compiler exited with status {proc.returncode}",
                                Severity.ERROR, "external"))
    return CompileReport(diags, parsed=True, external_log=log)
