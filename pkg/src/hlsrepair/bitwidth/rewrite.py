"""Rewrite integer declarations to the planned ``ac_int`` widths."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..cfront import ast as A
from ..cfront.scope import resolve
from ..cfront.source import Edit, SourceUnit
from ..cfront.types import IntType
from .core import BitWidthPlan, PlanEntry

AC_INCLUDE = "#include <ac_int.h>\n"


class ApplyError(Exception):
    """Some planned variables could not be rewritten.

    ``unit`` holds the rewrite of every other entry; ``skipped`` lists
    ``(entry, reason)`` pairs.
    """

    def __init__(self, skipped: list, unit: SourceUnit):
        names = ", ".join(e.name for e, _ in skipped)
        super().__init__(f"cannot rewrite {names}")
        self.skipped = skipped
        self.unit = unit


@dataclass
class ApplyReport:
    unit: SourceUnit
    rewritten: list[PlanEntry] = field(default_factory=list)
    skipped: list[tuple[PlanEntry, str]] = field(default_factory=list)


def _address_taken(res, sym) -> bool:
    ids = {id(u) for u in res.uses_of(sym)}
    for node in res.unit.walk():
        if isinstance(node, A.Unary) and node.op == "&":
            inner = node.operand
            while isinstance(inner, A.Paren):
                inner = inner.expr
            if id(inner) in ids:
                return True
    return False


def _spec_text(spec: A.TypeSpec, storage: tuple[str, ...], type_text: str) -> str:
    return " ".join([*storage, *spec.qualifiers, type_text])


def apply_with_report(unit: SourceUnit, plan: BitWidthPlan, include_header: bool = False) -> ApplyReport:
    """Rewrite every shrinking plan entry; never raises for per-variable problems."""
    report = ApplyReport(unit)
    entries = [e for e in plan if e.shrinks]
    if not entries or unit.ast is None:
        return report
    res = resolve(unit.ast)
    syms = {s.uid: s for s in res.variables}
    groups: dict[int, tuple[A.Node, list]] = {}
    for e in entries:
        sym = syms.get(e.uid)
        if sym is None:
            report.skipped.append((e, "no matching declaration"))
            continue
        if not isinstance(sym.ctype, IntType) or sym.node.derivs:
            report.skipped.append((e, "not a scalar integer declaration"))
            continue
        if _address_taken(res, sym):
            report.skipped.append((e, "address is taken; narrowing would change aliasing"))
            continue
        groups.setdefault(id(sym.decl), (sym.decl, []))[1].append((sym, e))

    parents = {}
    for node in unit.ast.walk():
        for child in node.children():
            parents[id(child)] = node
    raw = unit.raw
    edits: list[Edit] = []
    for decl, pairs in groups.values():
        if isinstance(decl, A.Param):
            (sym, e), = pairs
            edits.append(Edit(decl.spec.span.start, decl.spec.span.end,
                              _spec_text(decl.spec, decl.storage, e.type_text), e.name))
            report.rewritten.append(e)
            continue
        if not isinstance(decl, A.Declaration):
            report.skipped.extend((e, "unsupported declaration form") for _, e in pairs)
            continue
        by_node = {id(s.node): e for s, e in pairs}
        types = {by_node.get(id(d)) and by_node[id(d)].type_text for d in decl.declarators}
        if len(types) == 1 and None not in types:
            edits.append(Edit(decl.spec.span.start, decl.spec.span.end,
                              _spec_text(decl.spec, decl.storage, types.pop()), "width"))
            report.rewritten.extend(e for _, e in pairs)
            continue
        if isinstance(parents.get(id(decl)), A.For):
            report.skipped.extend((e, "mixed widths in a for-loop declaration") for _, e in pairs)
            continue
        # split into one declaration per declarator
        old_spec = raw[decl.spec.span.start:decl.spec.span.end].decode()
        parts = []
        for d in decl.declarators:
            e = by_node.get(id(d))
            spec = _spec_text(decl.spec, decl.storage, e.type_text) if e else old_spec
            parts.append(f"{spec} {raw[d.span.start:d.span.end].decode()};")
        edits.append(Edit(decl.span.start, decl.span.end, " ".join(parts), "split declaration"))
        report.rewritten.extend(e for _, e in pairs)
    if not edits:
        return report
    if include_header and b"ac_int.h" not in raw:
        edits.append(Edit(_include_pos(unit), _include_pos(unit), AC_INCLUDE, "ac_int header"))
    report.unit = unit.apply_edits(edits)
    return report


def _include_pos(unit: SourceUnit) -> int:
    pos = 0
    for item in unit.ast.items:
        if isinstance(item, A.Directive) and item.text.lstrip().startswith("#include"):
            pos = unit.raw.find(b"\n", item.span.end - 1) + 1 or len(unit.raw)
        elif not isinstance(item, (A.Directive, A.Define)):
            break
    return pos


def apply(unit: SourceUnit, plan: BitWidthPlan, include_header: bool = False) -> SourceUnit:
    """Rewrite planned declarations; :class:`ApplyError` if any had to be skipped."""
    report = apply_with_report(unit, plan, include_header)
    if report.skipped:
        raise ApplyError(report.skipped, report.unit)
    return report.unit
