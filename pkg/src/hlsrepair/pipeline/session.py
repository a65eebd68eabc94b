"""One repair instance through the five stages."""
from __future__ import annotations

import os
import re
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..cfront.source import SourceUnit
from ..cfront.source import Stage as UnitStage
from ..detect import CompileReport, Diagnostic, ErrorClass, Severity, check
from ..detect.diagnostics import make
from ..llm import (Backend, BackendError, CostLedger, ExtractError, PromptTooLarge, Stage, UnrecordedPrompt,
                   build_prompt, complete, extract_program, make_backend)
from .config import Config

_FINDING = re.compile(r"^\s*(?:ERROR|ADVISORY)\s*\[([A-Z_]+)\]\s*:?\s*(.+?)\s*$")


@dataclass
class StageEntry:
    stage: str
    generation: int
    verdict: str
    errors: int
    classes: list[str]
    edits: int = 0
    exchanges: list[int] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class RepairSession:
    benchmark: str
    instance: int
    seed: int
    trace: list[StageEntry] = field(default_factory=list)
    compile_pass: bool = False
    sim_pass: bool = False
    repair_queries: int = 0
    ledger: CostLedger = field(default_factory=CostLedger)
    final: Optional[SourceUnit] = None
    findings: list[Diagnostic] = field(default_factory=list)
    script_edits: int = 0
    script_resolved: int = 0
    first_repair_program_tokens: Optional[int] = None
    bitwidth: list[dict] = field(default_factory=list)
    ppa: Optional[dict] = None
    optimizable: bool = False
    backend_errors: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def unrecorded(self) -> bool:
        return any(e.startswith("UnrecordedPrompt") for e in self.backend_errors)

    def to_json(self, with_timing: bool = True) -> dict:
        d = {"benchmark": self.benchmark, "instance": self.instance, "seed": self.seed,
             "compile_pass": self.compile_pass, "sim_pass": self.sim_pass,
             "repair_queries": self.repair_queries,
             "trace": [t.to_json() for t in self.trace],
             "findings": [f.to_json() for f in self.findings],
             "script_edits": self.script_edits, "script_resolved": self.script_resolved,
             "first_repair_program_tokens": self.first_repair_program_tokens,
             "bitwidth": self.bitwidth, "ppa": self.ppa, "optimizable": self.optimizable,
             "backend_errors": self.backend_errors, "notes": self.notes,
             "ledger": self.ledger.to_json(with_timing),
             "final_source": self.final.text if self.final is not None else None}
        if with_timing:
            d["wall_time"] = self.wall_time
        return d


def _entry(stage: str, unit: SourceUnit, report: CompileReport, **kw) -> StageEntry:
    return StageEntry(stage, unit.generation, report.verdict, len(report.errors),
                      sorted({d.error_class.value for d in report.errors}), **kw)


def _parse_findings(text: str) -> list[Diagnostic]:
    out = []
    for line in text.splitlines():
        m = _FINDING.match(line)
        if not m:
            continue
        try:
            cls = ErrorClass.parse(m.group(1))
        except ValueError:
            continue
        out.append(make(cls, None, m.group(2), "", Severity.ADVISORY))
    return out


def _backend_for(config: Config, golden: Optional[str]) -> Backend:
    key = os.environ.get(config.api_key_env) if config.api_key_env else None
    return make_backend(config.mode, cassette=config.cassette, endpoint=config.endpoint, model=config.model,
                        api_key=key, golden=golden)


def _library(config: Config):
    from ..rag import bundled_library, load_library
    return load_library(config.library) if config.library else list(bundled_library())


def run_instance(source, config: Config, *, entry: Optional[str] = None, dataset: Sequence = (),
                 backend: Optional[Backend] = None, golden: Optional[str] = None, report=None,
                 benchmark: str = "", instance: int = 0) -> RepairSession:
    """Run the five stages on one program; always returns a session."""
    t0 = time.perf_counter()
    unit = source if isinstance(source, SourceUnit) else SourceUnit.from_file(source)
    original = unit
    rows = list(dataset)
    check_rows = rows[:config.check_rows]
    session = RepairSession(benchmark or unit.name, instance, config.seed_base + instance,
                            ledger=CostLedger(config.price_in, config.price_out))
    if backend is None:
        backend = _backend_for(config, golden)

    def do_check(u: SourceUnit) -> CompileReport:
        if entry and check_rows and u.ok:
            return check(u, dataset=check_rows, entry=entry, compile_cmd=config.compile_cmd)
        return check(u, compile_cmd=config.compile_cmd)

    # 1. preprocess
    current = unit
    rep = do_check(current)
    pre = _entry("preprocess", current, rep)
    session.trace.append(pre)
    if config.detect_extra and current.ok:
        try:
            bundle = build_prompt(Stage.DETECT_EXTRA, current, rep.log, (), config.context_tokens)
            ex = complete(bundle, backend, session.ledger)
            pre.exchanges.append(ex.seq)
            session.findings = _parse_findings(ex.response)
        except (BackendError, PromptTooLarge) as e:
            session.backend_errors.append(str(e))

    # 2. script pre-repair
    if config.scripts and current.ok and rep.errors:
        from ..script_repair import script_pass
        outcome = script_pass(current, rep, dataset=check_rows or None, entry=entry if check_rows else None,
                              disabled=config.skip_passes, max_depth=config.max_depth)
        if outcome.applied:
            current, rep = outcome.unit, outcome.report
        session.script_edits = len(outcome.applied)
        session.script_resolved = len(outcome.resolved)
        session.trace.append(_entry("script_repair", current, rep, edits=len(outcome.applied)))

    # 3. iterative LLM repair
    library = _library(config) if config.rag else None
    extra_log = ""
    while (not current.ok or rep.errors) and session.repair_queries < config.q_max:
        refs = []
        if library:
            from ..rag import Retriever
            refs = _retriever(library).retrieve(rep.log, config.rag_k)
        log = rep.log + (f"\n{extra_log}" if extra_log else "")
        try:
            bundle = build_prompt(Stage.REPAIR, current, log, refs, config.context_tokens)
        except PromptTooLarge as e:
            session.notes.append(str(e))
            break
        if session.first_repair_program_tokens is None:
            session.first_repair_program_tokens = bundle.program_tokens
        session.repair_queries += 1
        try:
            ex = complete(bundle, backend, session.ledger)
        except BackendError as e:
            session.backend_errors.append(str(e))
            session.trace.append(_entry("llm_repair", current, rep, note=f"backend error: {e}"))
            if isinstance(e, UnrecordedPrompt):
                break
            continue
        try:
            text = extract_program(ex.response)
        except ExtractError as e:
            extra_log = f"ERROR [SYNTAX]: previous answer rejected: {e}"
            session.trace.append(_entry("llm_repair", current, rep, exchanges=[ex.seq], note=str(e)))
            continue
        extra_log = ""
        current = current.rewrite(text, UnitStage.LLM_REPAIRED)
        rep = do_check(current)
        session.trace.append(_entry("llm_repair", current, rep, exchanges=[ex.seq]))

    # 4. compile and simulation verdicts
    session.compile_pass = current.ok and rep.passed
    session.final = current
    if session.compile_pass:
        current = current.rewrite(current.raw, UnitStage.COMPILED_OK)
        session.final = current
        if entry and rows:
            session.sim_pass = _simulate(session, original, current, entry, rows, config)
        else:
            session.sim_pass = True
            session.notes.append("no dataset: simulation check is vacuous")
    # 5. potential list and pragma optimization
    if session.sim_pass:
        session.optimizable = True
        if report is not None and len(report):
            _optimize(session, report, entry, rows[:config.check_rows], backend, config)
    session.wall_time = time.perf_counter() - t0
    return session


_RETRIEVERS: dict = {}


def _retriever(library):
    from ..rag import Retriever
    key = tuple(t.id for t in library)
    if key not in _RETRIEVERS:
        _RETRIEVERS[key] = Retriever(library)
    return _RETRIEVERS[key]


def _simulate(session: RepairSession, original: SourceUnit, current: SourceUnit, entry: str, rows, config) -> bool:
    from ..bitwidth import Policy, apply_with_report, plan
    from ..interp import CompileError, ExecError, ProfileError, equivalent, profile
    candidate = current
    try:
        prof = profile(current, entry, rows)
        bw_plan = plan(prof, current, Policy.GUARD_BIT if config.guard_bit else Policy.NONE)
        applied = apply_with_report(current, bw_plan, config.include_header)
        session.bitwidth = [e for e in bw_plan.to_json() if e["width"] < e["declared_width"]]
        for e, why in applied.skipped:
            session.notes.append(f"bitwidth: {e.name} kept its width ({why})")
        candidate = applied.unit
    except (ProfileError, CompileError, ExecError) as e:
        session.notes.append(f"bitwidth skipped: {e}")
    try:
        verdict = equivalent(original, candidate, entry, rows, where_a_ok=True)
    except ExecError as e:
        session.notes.append(f"simulation failed: {e}")
        return False
    if not verdict:
        session.notes.append(f"simulation mismatch: {verdict.describe()}")
        return False
    session.final = candidate
    return True


def _optimize(session: RepairSession, report, entry, rows, backend, config) -> None:
    from ..ppa import OptimizeError, optimize
    try:
        res = optimize(session.final, report, config.ppa_mode, entry=entry, dataset=rows,
                       backend=backend, ledger=session.ledger)
    except (OptimizeError, BackendError, ExtractError) as e:
        session.notes.append(f"ppa skipped: {e}")
        return
    session.final = res.unit
    session.ppa = res.to_json()
