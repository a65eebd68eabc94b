"""Minimal widths from observed ranges, and the signedness rule."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Optional

from ..cfront import ast as A
from ..cfront.scope import Resolution, Symbol


class DomainError(ValueError):
    pass


class Policy(str, Enum):
    NONE = "none"
    GUARD_BIT = "guard"


def bits_required(lo: int, hi: int, signed: bool) -> int:
    """Smallest W >= 1 whose representable range contains [lo, hi]."""
    if lo > hi:
        raise DomainError(f"empty range [{lo}, {hi}]")
    if not signed:
        if lo < 0:
            raise DomainError(f"unsigned width requested for negative minimum {lo}")
        return max(1, hi.bit_length())
    # two's complement: need hi <= 2^(W-1)-1 and lo >= -2^(W-1)
    need_hi = hi.bit_length() + 1 if hi > 0 else 1
    need_lo = (-lo - 1).bit_length() + 1 if lo < 0 else 1
    return max(need_hi, need_lo)


def _mentions_sub(e: Optional[A.Node]) -> bool:
    if e is None:
        return False
    for n in e.walk():
        if isinstance(n, A.Binary) and n.op == "-":
            return True
        if isinstance(n, A.Unary) and n.op in ("-", "--"):
            return True
        if isinstance(n, A.Postfix) and n.op == "--":
            return True
        if isinstance(n, A.Assign) and n.op == "-=":
            return True
    return False


def _strip(e: A.Expr) -> A.Expr:
    while isinstance(e, A.Paren):
        e = e.expr
    return e


def receives_subtraction(res: Resolution, sym: Symbol) -> bool:
    """Whether any store into ``sym`` involves subtraction."""
    if isinstance(sym.node, A.Declarator) and _mentions_sub(sym.node.init):
        return True
    ids = {id(i) for i in res.uses_of(sym)}
    for node in res.unit.walk():
        if isinstance(node, A.Assign):
            t = _strip(node.target)
            if isinstance(t, A.Ident) and id(t) in ids:
                if node.op == "-=" or _mentions_sub(node.value):
                    return True
        elif isinstance(node, (A.Unary, A.Postfix)) and node.op == "--":
            t = _strip(node.operand)
            if isinstance(t, A.Ident) and id(t) in ids:
                return True
    return False


@dataclass
class PlanEntry:
    uid: tuple
    name: str
    function: str
    line: int
    signed: bool
    width: int
    min: int
    max: int
    declared_width: int
    declared_signed: bool
    policy: str

    @property
    def shrinks(self) -> bool:
        return self.width < self.declared_width

    @property
    def type_text(self) -> str:
        return f"ac_int<{self.width}, {'true' if self.signed else 'false'}>"


@dataclass
class BitWidthPlan:
    entries: dict[tuple, PlanEntry] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def by_name(self, name: str, function: Optional[str] = None) -> Optional[PlanEntry]:
        for e in self.entries.values():
            if e.name == name and (function is None or e.function == function):
                return e
        return None

    def to_json(self) -> list[dict]:
        out = []
        for e in sorted(self.entries.values(), key=lambda e: (e.line, e.name)):
            d = asdict(e)
            d["uid"] = list(e.uid)
            d["type"] = e.type_text
            out.append(d)
        return out


def choose_signed(stats, subtracts: bool) -> bool:
    if stats.min < 0:
        return True
    if not stats.declared_signed:
        return False
    return subtracts


def plan(profile, unit=None, policy: Policy | str = Policy.NONE) -> BitWidthPlan:
    """Width per profiled integer variable.

    ``unit`` (a SourceUnit or TranslationUnit) enables the subtraction test of
    the signedness rule; without it, signed declarations stay signed.
    """
    policy = Policy(policy)
    res = None
    if unit is not None:
        from ..cfront.scope import resolve
        tu = unit.ast if hasattr(unit, "ast") else unit
        if tu is not None:
            res = resolve(tu)
    syms = {}
    if res is not None:
        syms = {s.uid: s for s in res.variables}
    out = {}
    for key, stats in profile.vars.items():
        sym = syms.get(key)
        subtracts = True if sym is None else receives_subtraction(res, sym)
        signed = choose_signed(stats, subtracts)
        w = bits_required(stats.min, stats.max, signed)
        if policy is Policy.GUARD_BIT:
            w += 1
        w = min(w, stats.declared_bits)
        out[key] = PlanEntry(key, stats.name, stats.function, stats.line, signed, w, stats.min,
                             stats.max, stats.declared_bits, stats.declared_signed, policy.value)
    return BitWidthPlan(out)
