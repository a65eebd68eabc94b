"""End-to-end repair sessions, corpus runs and pass-rate reports."""
from .config import MODES, Config, ConfigError
from .corpus import (ARMS, CorpusRun, CostComparison, compare_cost, default_backend, run_arms,
                     run_benchmark, run_corpus)
from .manifest import Benchmark, ManifestError, load_manifest
from .metrics import BenchmarkRate, PassRateReport, format_rate, pass_rate
from .session import RepairSession, StageEntry, run_instance

__all__ = [
    "MODES", "Config", "ConfigError", "ARMS", "CorpusRun", "CostComparison", "compare_cost",
    "default_backend", "run_arms", "run_benchmark", "run_corpus", "Benchmark", "ManifestError",
    "load_manifest", "BenchmarkRate", "PassRateReport", "format_rate", "pass_rate", "RepairSession",
    "StageEntry", "run_instance",
]
