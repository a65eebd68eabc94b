"""Bit-width planning and ``ac_int`` rewriting from observed value ranges."""
from .core import (BitWidthPlan, DomainError, PlanEntry, Policy, bits_required, choose_signed, plan,
                   receives_subtraction)
from .estimator import BitWidthOptimizer
from .optimizer import emit_optimizer_program, parse_report
from .rewrite import AC_INCLUDE, ApplyError, ApplyReport, apply, apply_with_report

__all__ = [
    "BitWidthPlan", "DomainError", "PlanEntry", "Policy", "bits_required", "choose_signed", "plan",
    "receives_subtraction", "BitWidthOptimizer", "emit_optimizer_program", "parse_report",
    "AC_INCLUDE", "ApplyError", "ApplyReport", "apply", "apply_with_report",
]
