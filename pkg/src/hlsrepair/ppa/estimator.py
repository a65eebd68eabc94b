"""Analytic PROXY estimates of latency and area.

These numbers only rank alternatives; they are not synthesis results.
Latency counts one unit per simple statement, multiplies loop bodies by
their trip count (16 when unknown) and divides by the unroll factor. Area
counts operators, multiplied by the unroll factor of enclosing loops.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..cfront import ast as A
from ..cfront.scope import resolve
from .loops import trip_count

LABEL = "PROXY"
UNKNOWN_TRIPS = 16
AREA_GOAL = Fraction(3, 4)       # operator sharing under design_goal area
AREA_GOAL_LATENCY = Fraction(5, 4)

_UNROLL = re.compile(r"#\s*pragma\s+(\w*unroll\w*)\s*(\w+)?")
_PIPE = re.compile(r"#\s*pragma\s+\w*pipeline\w*\s*(\d+)?")


@dataclass
class ProxyEstimate:
    latency: dict[str, Fraction] = field(default_factory=dict)
    area: dict[str, Fraction] = field(default_factory=dict)
    loops: dict[int, Fraction] = field(default_factory=dict)   # loop line -> latency
    label: str = LABEL

    def to_json(self) -> dict:
        return {"label": self.label,
                "latency": {k: str(v) for k, v in sorted(self.latency.items())},
                "area": {k: str(v) for k, v in sorted(self.area.items())},
                "loops": {str(k): str(v) for k, v in sorted(self.loops.items())}}


def _ops(e: Optional[A.Node]) -> int:
    if e is None:
        return 0
    return sum(1 for n in e.walk() if isinstance(n, (A.Binary, A.Assign, A.Unary, A.Postfix, A.Index)))


def _directives(items, i):
    """Pragmas immediately preceding item ``i`` of a block."""
    out = []
    j = i - 1
    while j >= 0 and isinstance(items[j], A.Pragma):
        out.append(items[j].text)
        j -= 1
    return out


class _Walker:
    def __init__(self, unit: A.TranslationUnit):
        self.unit = unit
        self.res = resolve(unit)
        self.est = ProxyEstimate()
        self.functions = unit.functions()
        self._busy: set[str] = set()

    def function(self, name: str) -> tuple[Fraction, Fraction]:
        if name in self.est.latency:
            return self.est.latency[name], self.est.area[name]
        fd = self.functions[name]
        self._busy.add(name)
        lat, area = self.stmt(fd.body, [])
        self._busy.discard(name)
        pragmas = self._head_pragmas(fd)
        if any("design_goal" in p and "area" in p for p in pragmas):
            area *= AREA_GOAL
            lat *= AREA_GOAL_LATENCY
        self.est.latency[name] = lat
        self.est.area[name] = area
        return lat, area

    def _head_pragmas(self, fd: A.FunctionDef) -> list[str]:
        items = list(self.unit.items)
        idx = next(i for i, it in enumerate(items) if it is fd)
        return _directives(items, idx)

    def calls(self, e: Optional[A.Node]) -> Fraction:
        total = Fraction(0)
        if e is None:
            return total
        for n in e.walk():
            if isinstance(n, A.Call) and isinstance(n.func, A.Ident) and n.func.name in self.functions \
                    and n.func.name not in self._busy:
                total += self.function(n.func.name)[0]
        return total

    def stmt(self, s: A.Node, pragmas: list[str]) -> tuple[Fraction, Fraction]:
        if isinstance(s, A.Block):
            lat = area = Fraction(0)
            items = list(s.items)
            for i, it in enumerate(items):
                if isinstance(it, A.Pragma):
                    continue
                l, a = self.stmt(it, _directives(items, i))
                lat += l
                area += a
            return lat, area
        if isinstance(s, (A.For, A.While, A.DoWhile)):
            body_l, body_a = self.stmt(s.body, [])
            head = _ops(getattr(s, "cond", None)) + _ops(getattr(s, "step", None))
            body_l += 1
            trips = trip_count(s, self.res)
            n = UNKNOWN_TRIPS if trips is None else trips
            factor = 1
            ii = None
            for p in pragmas:
                m = _UNROLL.match(p.strip())
                if m:
                    arg = m.group(2)
                    if arg is None or arg == "yes":
                        factor = max(1, n)
                    elif arg.isdigit():
                        factor = max(1, int(arg))
                m = _PIPE.match(p.strip())
                if m:
                    ii = int(m.group(1) or 1)
            if ii is not None:
                lat = body_l + (n - 1) * ii if n else Fraction(0)
            else:
                lat = -(-n // factor) * body_l
            lat = Fraction(lat)
            self.est.loops[s.span.line] = lat
            return lat, (body_a + head) * factor
        if isinstance(s, A.If):
            tl, ta = self.stmt(s.then, [])
            el, ea = self.stmt(s.otherwise, []) if s.otherwise is not None else (Fraction(0), Fraction(0))
            return 1 + max(tl, el) + self.calls(s.cond), ta + ea + _ops(s.cond)
        if isinstance(s, A.Switch):
            bl, ba = self.stmt(s.body, [])
            return 1 + bl, ba + _ops(s.expr)
        if isinstance(s, (A.ExprStmt, A.Return, A.Declaration)):
            return Fraction(1) + self.calls(s), Fraction(_ops(s))
        return Fraction(0), Fraction(0)


def estimate(unit) -> ProxyEstimate:
    tu = unit.ast if hasattr(unit, "ast") else unit
    w = _Walker(tu)
    for name in w.functions:
        w.function(name)
    return w.est
