"""A small fit/transform wrapper around profile -> plan -> apply."""
from __future__ import annotations

from typing import Optional, Sequence

from ..cfront.source import SourceUnit
from ..interp import ExecEnv, profile
from .core import BitWidthPlan, Policy, plan
from .rewrite import apply_with_report


class BitWidthOptimizer:
    """``fit`` profiles a unit over a dataset; ``transform`` rewrites it."""

    def __init__(self, entry: str = "main", policy: Policy | str = Policy.NONE, include_header: bool = False):
        self.entry = entry
        self.policy = Policy(policy)
        self.include_header = include_header
        self.plan_: Optional[BitWidthPlan] = None

    def get_params(self) -> dict:
        return {"entry": self.entry, "policy": self.policy.value, "include_header": self.include_header}

    def set_params(self, **params) -> "BitWidthOptimizer":
        for k, v in params.items():
            if k not in self.get_params():
                raise ValueError(f"unknown parameter {k!r}")
            setattr(self, k, Policy(v) if k == "policy" else v)
        return self

    def fit(self, unit: SourceUnit, dataset: Sequence[ExecEnv]) -> "BitWidthOptimizer":
        prof = profile(unit, self.entry, dataset)
        self.plan_ = plan(prof, unit, self.policy)
        return self

    def transform(self, unit: SourceUnit) -> SourceUnit:
        if self.plan_ is None:
            raise RuntimeError("fit must be called before transform")
        return apply_with_report(unit, self.plan_, self.include_header).unit

    def fit_transform(self, unit: SourceUnit, dataset: Sequence[ExecEnv]) -> SourceUnit:
        return self.fit(unit, dataset).transform(unit)
