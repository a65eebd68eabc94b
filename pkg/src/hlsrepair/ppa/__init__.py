"""Pragma-based PPA optimization driven by bottleneck reports."""
from .estimator import LABEL, ProxyEstimate, estimate
from .loops import trip_count
from .optimize import MAX_UNROLL, Dialect, OptimizeError, OptimizeResult, PragmaEdit, optimize
from .report import BottleneckEntry, BottleneckReport, Metric

__all__ = [
    "LABEL", "ProxyEstimate", "estimate", "trip_count", "MAX_UNROLL", "Dialect", "OptimizeError",
    "OptimizeResult", "PragmaEdit", "optimize", "BottleneckEntry", "BottleneckReport", "Metric",
]
