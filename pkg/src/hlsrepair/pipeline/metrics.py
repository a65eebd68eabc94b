"""Pass rates as exact percentages."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


def pass_rate(m: int, n: int) -> Fraction:
    """100 * m / n, exactly."""
    if n <= 0:
        raise ValueError("n must be positive")
    if not 0 <= m <= n:
        raise ValueError(f"m={m} outside [0, {n}]")
    return Fraction(100 * m, n)


def format_rate(rate: Fraction, places: int = 2) -> str:
    """Render with ``places`` decimals, rounding half up."""
    scaled = rate * 10 ** places
    v = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    s = str(v).rjust(places + 1, "0")
    return f"{s[:-places]}.{s[-places:]}"


@dataclass
class BenchmarkRate:
    id: str
    name: str
    error_class: str
    n: int = 0
    m_compile: int = 0
    m_sim: int = 0

    @property
    def compile_rate(self) -> Fraction:
        return pass_rate(self.m_compile, self.n)

    @property
    def sim_rate(self) -> Fraction:
        return pass_rate(self.m_sim, self.n)

    def to_json(self) -> dict:
        return {"id": self.id, "name": self.name, "class": self.error_class, "n": self.n,
                "m_compile": self.m_compile, "m_sim": self.m_sim,
                "compile_rate": format_rate(self.compile_rate), "sim_rate": format_rate(self.sim_rate)}


@dataclass
class PassRateReport:
    arm: str
    rows: list[BenchmarkRate] = field(default_factory=list)

    def _mean(self, attr: str, cls: Optional[str] = None) -> Fraction:
        rows = [r for r in self.rows if cls is None or r.error_class == cls]
        if not rows:
            return Fraction(0)
        return sum((getattr(r, attr) for r in rows), Fraction(0)) / len(rows)

    @property
    def mean_compile(self) -> Fraction:
        return self._mean("compile_rate")

    @property
    def mean_sim(self) -> Fraction:
        return self._mean("sim_rate")

    def by_class(self) -> dict[str, tuple[Fraction, Fraction]]:
        classes = sorted({r.error_class for r in self.rows})
        return {c: (self._mean("compile_rate", c), self._mean("sim_rate", c)) for c in classes}

    def to_json(self) -> dict:
        return {"arm": self.arm, "benchmarks": [r.to_json() for r in self.rows],
                "mean_compile_rate": format_rate(self.mean_compile),
                "mean_sim_rate": format_rate(self.mean_sim),
                "by_class": {c: {"compile_rate": format_rate(a), "sim_rate": format_rate(b)}
                             for c, (a, b) in self.by_class().items()}}

    def render(self) -> str:
        """Plain-text table with compile and simulation columns."""
        w = max([len(r.name) for r in self.rows] + [9])
        head = f"{'Type':<5} {'#':>3}  {'Benchmark':<{w}}  {'Compi.':>7}  {'Simu.':>7}"
        lines = [f"arm: {self.arm}", head, "-" * len(head)]
        for i, r in enumerate(self.rows, 1):
            lines.append(f"{r.error_class:<5} {i:>3}  {r.name:<{w}}  {format_rate(r.compile_rate):>7}  "
                         f"{format_rate(r.sim_rate):>7}")
        lines.append("-" * len(head))
        lines.append(f"{'mean':<5} {'':>3}  {'':<{w}}  {format_rate(self.mean_compile):>7}  "
                     f"{format_rate(self.mean_sim):>7}")
        return "\n".join(lines)
