"""Corpus runs, ablation arms and cost comparison."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Union

from ..llm import Backend, cost, format_cost
from ..ppa import BottleneckReport
from .config import Config
from .manifest import Benchmark, load_manifest
from .metrics import BenchmarkRate, PassRateReport
from .session import RepairSession, _backend_for, run_instance

ARMS = {
    "baseline": {"rag": False, "scripts": False},
    "scripts": {"rag": False, "scripts": True},
    "full": {"rag": True, "scripts": True},
}

BackendFactory = Callable[[Benchmark, Config], Backend]


def default_backend(bench: Benchmark, config: Config) -> Backend:
    return _backend_for(config, bench.golden_text())


def _benchmarks(manifest) -> list[Benchmark]:
    if isinstance(manifest, (str, Path)):
        return load_manifest(manifest)
    return list(manifest)


def run_benchmark(bench: Benchmark, config: Config, n: int,
                  backend_factory: Optional[BackendFactory] = None) -> list[RepairSession]:
    factory = backend_factory or default_backend
    dataset = bench.load_dataset()
    report = BottleneckReport.load(bench.report) if bench.report else None
    golden = bench.golden_text()
    out = []
    for i in range(n):
        backend = factory(bench, config.replace(seed_base=config.seed_base + i))
        out.append(run_instance(bench.file, config, entry=bench.entry, dataset=dataset, backend=backend,
                                golden=golden, report=report, benchmark=bench.id, instance=i))
    return out


@dataclass
class CorpusRun:
    report: PassRateReport
    sessions: dict[str, list[RepairSession]] = field(default_factory=dict)

    @property
    def max_queries(self) -> int:
        return max((s.repair_queries for ss in self.sessions.values() for s in ss), default=0)

    def total_cost(self) -> Fraction:
        return sum((cost(s.ledger) for ss in self.sessions.values() for s in ss), Fraction(0))


def run_corpus(manifest: Union[str, Path, Iterable[Benchmark]], config: Config, n: int = 15, *,
               arm: str = "custom", backend_factory: Optional[BackendFactory] = None) -> CorpusRun:
    """``n`` sessions per benchmark; manifest problems raise before any session runs."""
    if n < 1:
        raise ValueError("n must be at least 1")
    benches = _benchmarks(manifest)

    def one(b: Benchmark):
        return b, run_benchmark(b, config, n, backend_factory)

    if config.parallelism > 1:
        with ThreadPoolExecutor(config.parallelism) as pool:
            results = list(pool.map(one, benches))
    else:
        results = [one(b) for b in benches]
    rows, sessions = [], {}
    for b, ss in results:
        sessions[b.id] = ss
        rows.append(BenchmarkRate(b.id, b.name, b.error_class, n,
                                  sum(s.compile_pass for s in ss), sum(s.sim_pass for s in ss)))
    return CorpusRun(PassRateReport(arm, rows), sessions)


def run_arms(manifest, config: Config, n: int = 15, *, arms: Sequence[str] = tuple(ARMS),
             backend_factory: Optional[BackendFactory] = None) -> dict[str, CorpusRun]:
    benches = _benchmarks(manifest)
    return {a: run_corpus(benches, config.replace(**ARMS[a]), n, arm=a, backend_factory=backend_factory)
            for a in arms}


@dataclass
class CostComparison:
    on: dict[str, Fraction]
    off: dict[str, Fraction]

    def ratio(self, cls: Optional[str] = None) -> Optional[Fraction]:
        on = self.total_on if cls is None else self.on.get(cls, Fraction(0))
        off = self.total_off if cls is None else self.off.get(cls, Fraction(0))
        if off == 0:
            return Fraction(1) if on == 0 else None
        return on / off

    @property
    def total_on(self) -> Fraction:
        return sum(self.on.values(), Fraction(0))

    @property
    def total_off(self) -> Fraction:
        return sum(self.off.values(), Fraction(0))

    def to_json(self) -> dict:
        def r(x):
            return None if x is None else float(x)
        classes = sorted(set(self.on) | set(self.off))
        return {"by_class": {c: {"on": format_cost(self.on.get(c, Fraction(0))),
                                 "off": format_cost(self.off.get(c, Fraction(0))),
                                 "ratio": r(self.ratio(c))} for c in classes},
                "total_on": format_cost(self.total_on), "total_off": format_cost(self.total_off),
                "ratio": r(self.ratio())}


def compare_cost(config_on: Config, config_off: Config, corpus, n: int = 1, *,
                 backend_factory: Optional[BackendFactory] = None) -> CostComparison:
    """Total ledger cost per error class with and without script pre-repair."""
    benches = _benchmarks(corpus)
    if not benches:
        raise ValueError("empty corpus")
    runs = [run_corpus(benches, c, n, backend_factory=backend_factory) for c in (config_on, config_off)]
    cls = {b.id: b.error_class for b in benches}
    sides = []
    for run in runs:
        acc: dict[str, Fraction] = {}
        for bid, ss in run.sessions.items():
            acc[cls[bid]] = acc.get(cls[bid], Fraction(0)) + sum((cost(s.ledger) for s in ss), Fraction(0))
        sides.append(acc)
    return CostComparison(*sides)
