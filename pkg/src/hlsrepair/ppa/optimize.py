"""Pragma insertion driven by a bottleneck report."""
from __future__ import annotations

import difflib
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..cfront import ast as A
from ..cfront.scope import resolve
from ..cfront.source import Edit, SourceUnit
from ..cfront.types import ArrayType
from .estimator import ProxyEstimate, estimate
from .loops import trip_count
from .report import BottleneckEntry, BottleneckReport, Metric

MAX_UNROLL = 8

# strategy ids that make sense for each kind of target
_APPLICABLE = {
    "loop": ("loop-unroll", "pipeline"),
    "function": ("design-goal-area",),
    "array": ("memory-dual-port",),
}


class OptimizeError(Exception):
    pass


@dataclass(frozen=True)
class PragmaEdit:
    strategy: str
    target: str
    line: int            # line the pragma sits on in the result
    text: str
    factor: Optional[int] = None

    def to_json(self) -> dict:
        return {"strategy": self.strategy, "target": self.target, "line": self.line,
                "pragma": self.text, "factor": self.factor}


@dataclass
class OptimizeResult:
    unit: SourceUnit
    edits: list[PragmaEdit] = field(default_factory=list)
    skipped: list[tuple[BottleneckEntry, str]] = field(default_factory=list)
    before: Optional[ProxyEstimate] = None
    after: Optional[ProxyEstimate] = None

    def __iter__(self):
        return iter((self.unit, self.edits))

    def to_json(self) -> dict:
        return {"edits": [e.to_json() for e in self.edits],
                "skipped": [{"entry": e.to_json(), "reason": r} for e, r in self.skipped],
                "proxy_before": self.before.to_json() if self.before else None,
                "proxy_after": self.after.to_json() if self.after else None}


@dataclass
class Dialect:
    unroll: str = "hls_unroll"
    pipeline: str = "hls_pipeline_init_interval"
    design_goal: str = "design_goal"

    def unroll_text(self, factor) -> str:
        return f"#pragma {self.unroll} {factor}"


def _line_start(raw: bytes, pos: int) -> int:
    return raw.rfind(b"\n", 0, pos) + 1


def _indent(raw: bytes, pos: int) -> str:
    s = _line_start(raw, pos)
    e = s
    while raw[e:e + 1] in (b" ", b"\t"):
        e += 1
    return raw[s:e].decode()


def _prev_line(raw: bytes, pos: int) -> tuple[int, int, str]:
    """(start, end, text) of the line before the one containing ``pos``."""
    ls = _line_start(raw, pos)
    if ls == 0:
        return 0, 0, ""
    ps = _line_start(raw, ls - 1)
    return ps, ls, raw[ps:ls].decode("utf-8", "replace")


def _resolve_target(unit: SourceUnit, target: str):
    tu = unit.ast
    t = target.strip()
    if t.startswith("line:"):
        try:
            line = int(t[5:])
        except ValueError:
            return None, None
        for n in tu.walk():
            if isinstance(n, (A.For, A.While, A.DoWhile)) and n.span.line == line:
                return "loop", n
        return None, None
    funcs = tu.functions()
    if t in funcs:
        return "function", funcs[t]
    res = resolve(tu)
    for s in res.variables:
        if s.name == t and isinstance(s.ctype, ArrayType):
            return "array", s
    return None, None


def _pick_strategy(entry: BottleneckEntry, kind: str, strategies) -> Optional[str]:
    from ..rag import Retriever
    allowed = [s for s in strategies if s.id in _APPLICABLE[kind]]
    if not allowed:
        return None
    ranked = Retriever(allowed, embedder=_embedder(strategies)).scores(entry.query)
    return ranked[0][0].id


_EMB = {}


def _embedder(strategies):
    from ..rag import TfidfEmbedder
    key = tuple(s.id for s in strategies)
    if key not in _EMB:
        _EMB[key] = TfidfEmbedder([s.document for s in strategies])
    return _EMB[key]


def _pragma_edit(unit: SourceUnit, kind: str, node, strategy: str, dialect: Dialect, target: str):
    """(Edit or None, PragmaEdit or None, reason)."""
    raw = unit.raw
    if kind == "loop":
        pos = node.span.start
        ind = _indent(raw, pos)
        ps, pe, prev = _prev_line(raw, pos)
        if strategy == "loop-unroll":
            trips = trip_count(node, resolve(unit.ast))
            if trips is None:
                return None, None, "trip count is not static; unroll factor left to the tool"
            if trips < 2:
                return None, None, f"loop runs {trips} time(s); nothing to unroll"
            factor = min(trips, MAX_UNROLL)
            text = dialect.unroll_text(factor)
            kw = f"#pragma {dialect.unroll}"
            edit_meta = PragmaEdit(strategy, target, node.span.line, text, factor)
        else:
            factor = None
            text = f"#pragma {dialect.pipeline} 1"
            kw = f"#pragma {dialect.pipeline}"
            edit_meta = PragmaEdit(strategy, target, node.span.line, text)
        if prev.strip() == text:
            return None, None, "pragma already present"
        if prev.strip().startswith(kw):
            return Edit(ps, pe, f"{ind}{text}\n", strategy), edit_meta, ""
        return Edit(_line_start(raw, pos), _line_start(raw, pos), f"{ind}{text}\n", strategy), edit_meta, ""
    if kind == "function":
        text = f"#pragma {dialect.design_goal} area"
        pos = node.span.start
        ps, pe, prev = _prev_line(raw, pos)
        if prev.strip() == text:
            return None, None, "pragma already present"
        if prev.strip().startswith(f"#pragma {dialect.design_goal}"):
            return Edit(ps, pe, text + "\n", strategy), PragmaEdit(strategy, target, node.span.line, text), ""
        ls = _line_start(raw, pos)
        return Edit(ls, ls, text + "\n", strategy), PragmaEdit(strategy, target, node.span.line, text), ""
    # array: annotate the declaration
    sym = node
    decl = sym.decl
    pos = decl.span.start
    ind = _indent(raw, pos)
    text = f'#pragma hls_resource {sym.name} variables="{sym.name}" map_to_module="ram_dual_port"'
    ps, pe, prev = _prev_line(raw, pos)
    if prev.strip() == text:
        return None, None, "pragma already present"
    ls = _line_start(raw, pos)
    return Edit(ls, ls, f"{ind}{text}\n", strategy), PragmaEdit(strategy, target, sym.line, text), ""


def _verify(before: SourceUnit, after: SourceUnit, entry: Optional[str], dataset) -> str:
    from ..detect import check
    if not after.ok:
        return "edited program does not parse"
    report = check(after)
    if not report.passed:
        return f"edited program fails the checker: {report.errors[0].message}"
    if entry and dataset:
        from ..interp import equivalent
        v = equivalent(before, after, entry, dataset)
        if not v:
            return f"edited program is not equivalent: {v.reason}"
    return ""


def optimize(unit: SourceUnit, report: BottleneckReport, mode: str = "deterministic", *,
             entry: Optional[str] = None, dataset: Optional[Sequence] = None, backend=None, ledger=None,
             dialect: Optional[Dialect] = None, strict: bool = False) -> OptimizeResult:
    """Insert pragmas for each report entry, keeping only verified edits.

    ``strict`` turns a rejected edit into :class:`OptimizeError` instead of
    a skipped entry.
    """
    from ..rag import bundled_strategies
    dialect = dialect or Dialect()
    result = OptimizeResult(unit, before=estimate(unit) if unit.ok else None)
    if not report.entries:
        result.after = result.before
        return result
    if not unit.ok:
        raise OptimizeError("input program does not parse")
    if mode == "llm":
        return _optimize_llm(unit, report, result, entry, dataset, backend, ledger, strict)
    strategies = bundled_strategies()
    # targets and edits refer to the input unit; accepted edits accumulate
    accepted: list[tuple[Edit, PragmaEdit]] = []
    current = unit
    for e in report.entries:
        kind, node = _resolve_target(unit, e.target)
        if kind is None:
            result.skipped.append((e, f"target '{e.target}' not found"))
            continue
        strategy = _pick_strategy(e, kind, strategies)
        edit, meta, reason = _pragma_edit(unit, kind, node, strategy, dialect, e.target)
        if edit is None:
            result.skipped.append((e, reason))
            continue
        if any(a.start == edit.start and a.end == edit.end for a, _ in accepted):
            result.skipped.append((e, "another entry already placed a pragma here"))
            continue
        cand = unit.apply_edits([a for a, _ in accepted] + [edit])
        why = _verify(current, cand, entry, dataset)
        if why:
            if strict:
                raise OptimizeError(why)
            result.skipped.append((e, why))
            continue
        accepted.append((edit, meta))
        current = cand
    for edit, meta in accepted:
        shift = sum(len(a.text.encode()) - (a.end - a.start) for a, _ in accepted if a.start < edit.start)
        line = current.raw[:edit.start + shift].count(b"\n") + 1
        result.edits.append(PragmaEdit(meta.strategy, meta.target, line, meta.text, meta.factor))
    result.edits.sort(key=lambda p: p.line)
    result.unit = current
    result.after = estimate(current)
    return result


def _optimize_llm(unit, report, result, entry, dataset, backend, ledger, strict) -> OptimizeResult:
    from ..llm import build_prompt, complete, extract_program
    from ..rag import retrieve_strategy
    if backend is None:
        raise OptimizeError("llm mode needs a backend")
    refs = {}
    for e in report.entries:
        for s, score in retrieve_strategy(e.query, 1):
            refs.setdefault(s.id, (s, score))
    bundle = build_prompt("PPA_OPT", unit, json.dumps(report.to_json(), sort_keys=True), list(refs.values()))
    ex = complete(bundle, backend, ledger)
    cand = SourceUnit.from_bytes(unit.name, extract_program(ex.response), unit.stage, unit.generation + 1)
    why = _verify(unit, cand, entry, dataset)
    if why:
        if strict:
            raise OptimizeError(why)
        result.skipped.extend((e, why) for e in report.entries)
        result.after = result.before
        return result
    new_lines = cand.text.splitlines()
    for tag, i1, i2, j1, j2 in difflib.SequenceMatcher(a=unit.text.splitlines(), b=new_lines).get_opcodes():
        for j in range(j1, j2):
            if tag in ("insert", "replace") and new_lines[j].strip().startswith("#pragma"):
                result.edits.append(PragmaEdit("llm", "", j + 1, new_lines[j].strip()))
    result.unit = cand
    result.after = estimate(cand)
    return result
