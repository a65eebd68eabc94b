"""script_pass: run the sub-passes in order, keeping only verified fixes."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..cfront.source import Edit, RewriteConflict, SourceUnit, Stage
from ..detect import CompileReport, Diagnostic, ErrorClass, check
from ..interp import ExecEnv, equivalent, run
from .base import Fix, Source, diag_key
from .passes import MAX_DEPTH, PASSES

_DEFAULT_REASON = {
    ErrorClass.SYNTAX: "syntax error: deferred to LLM",
    ErrorClass.T7_UNSUPPORTED_STRUCT: "unsupported construct: deferred to LLM",
    ErrorClass.T4_BIT_WIDTH: "bit-width is handled by the bitwidth stage",
}


@dataclass(frozen=True)
class AppliedEdit:
    pass_name: str
    start: int          # byte span in the unit the pass ran on
    end: int
    before: str
    after: str
    note: str = ""


@dataclass
class RewriteOutcome:
    unit: SourceUnit
    applied: list[AppliedEdit] = field(default_factory=list)
    resolved: list[tuple[Diagnostic, str]] = field(default_factory=list)
    skipped: list[tuple[Diagnostic, str]] = field(default_factory=list)
    report: Optional[CompileReport] = None

    @property
    def changed(self) -> bool:
        return bool(self.applied)

    def to_json(self) -> dict:
        return {
            "stage": self.unit.stage.name,
            "applied": [e.__dict__ for e in self.applied],
            "resolved": [{"diagnostic": d.to_json(), "pass": p} for d, p in self.resolved],
            "skipped": [{"diagnostic": d.to_json(), "reason": r} for d, r in self.skipped],
        }


def _keys(report: CompileReport) -> Counter:
    return Counter(diag_key(d) for d in report.errors)


class _Verifier:
    def __init__(self, entry: Optional[str], dataset: Optional[Sequence[ExecEnv]], original: SourceUnit):
        self.entry = entry
        self.rows = list(dataset) if dataset else []
        self.original = original
        self._ok_rows: Optional[list[ExecEnv]] = None

    def check(self, unit: SourceUnit) -> CompileReport:
        if self.entry and self.rows:
            return check(unit, dataset=self.rows, entry=self.entry)
        return check(unit)

    def ok_rows(self) -> list[ExecEnv]:
        if self._ok_rows is None:
            self._ok_rows = [r for r in self.rows if run(self.original, self.entry, r).ok]
        return self._ok_rows

    def try_apply(self, base: SourceUnit, base_report: CompileReport, pass_name: str,
                  fixes: list[Fix]) -> tuple[Optional[SourceUnit], Optional[CompileReport], str]:
        edits = [e for f in fixes for e in f.edits]
        try:
            new = base.apply_edits(edits, Stage.SCRIPT_REPAIRED)
        except RewriteConflict as e:
            return None, None, f"edit conflict: {e}"
        if not new.ok:
            return None, None, "rewrite does not reparse"
        report = self.check(new)
        before, after = _keys(base_report), _keys(report)
        if len(report.errors) >= len(base_report.errors) or any(after[k] > before[k] for k in after):
            return None, None, "rewrite does not reduce the error count"
        if self.entry and self.rows:
            rows = self.ok_rows() if pass_name == "fix_exception" else self.rows
            if rows:
                verdict = equivalent(base, new, self.entry, rows)
                if not verdict:
                    return None, None, f"rewrite changes behaviour ({verdict.reason or 'observables differ'})"
        return new, report, ""


def script_pass(unit: SourceUnit, report: Optional[CompileReport] = None, *,
                dataset: Optional[Sequence[ExecEnv]] = None, entry: Optional[str] = None,
                disabled: Sequence[str] = (), max_depth: int = MAX_DEPTH) -> RewriteOutcome:
    """Apply the deterministic sub-passes in their fixed order.

    With ``dataset`` and ``entry`` every fix must keep the program equivalent on
    those rows; a fix that fails any check is dropped and its diagnostics are
    reported as skipped.
    """
    verifier = _Verifier(entry, dataset, unit)
    if report is None:
        report = verifier.check(unit)
    inputs = list(report.errors)
    if not unit.ok:
        return RewriteOutcome(unit, [], [], [(d, _reason(d, {})) for d in inputs], report)

    current, cur_report = unit, report
    applied: list[AppliedEdit] = []
    reasons: dict[tuple, str] = {}
    remaining = Counter(diag_key(d) for d in inputs)
    credit: dict[tuple, list[str]] = {}
    options = {"max_depth": max_depth}

    for name, cls, fn in PASSES:
        targets = [d for d in cur_report.errors if d.error_class is cls]
        if not targets:
            continue
        if name in disabled:
            for d in targets:
                reasons.setdefault(diag_key(d), f"{name} disabled")
            continue
        src = Source(current)
        result = fn(src, targets, options)
        for k, r in result.skips.items():
            reasons.setdefault(k, r)
        if not result.fixes:
            continue
        new, new_report, why = verifier.try_apply(current, cur_report, name, result.fixes)
        accepted = list(result.fixes) if new is not None else []
        if new is None and len(result.fixes) > 1:
            accepted = []
            for f in result.fixes:
                cand, cand_report, why = verifier.try_apply(current, cur_report, name, accepted + [f])
                if cand is None:
                    _note_rejection(reasons, cur_report, cls, f, why)
                    continue
                accepted.append(f)
                new, new_report = cand, cand_report
        elif new is None:
            _note_rejection(reasons, cur_report, cls, result.fixes[0], why)
        if not accepted or new is None:
            continue
        for f in accepted:
            for e in f.edits:
                applied.append(AppliedEdit(name, e.start, e.end,
                                           current.raw[e.start:e.end].decode("utf-8", "replace"),
                                           e.text, e.note))
        after = _keys(new_report)
        for k in list(remaining):
            gone = remaining[k] - after.get(k, 0)
            if gone > 0:
                credit.setdefault(k, []).extend([name] * gone)
                remaining[k] -= gone
        current, cur_report = new, new_report

    resolved, skipped = [], []
    for d in inputs:
        k = diag_key(d)
        if credit.get(k):
            resolved.append((d, credit[k].pop(0)))
        else:
            skipped.append((d, _reason(d, reasons)))
    return RewriteOutcome(current, applied, resolved, skipped, cur_report)


def _note_rejection(reasons: dict, report: CompileReport, cls: ErrorClass, fix: Fix, why: str) -> None:
    for d in report.errors:
        if d.error_class is cls and (d.subject == fix.subject or d.subject in fix.subject.split(", ")):
            reasons[diag_key(d)] = f"{fix.pass_name} rejected: {why}; deferred to LLM"


def _reason(d: Diagnostic, reasons: dict) -> str:
    return reasons.get(diag_key(d)) or _DEFAULT_REASON.get(
        d.error_class, "no applicable script rewrite: deferred to LLM")
