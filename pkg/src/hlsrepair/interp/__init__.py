"""Deterministic interpreter: equivalence oracle and value-range profiler."""
from .machine import (ASSERTION, DIV_ZERO, FREE_INVALID, ILLEGAL_SHIFT, OUT_OF_BOUNDS,
                      STACK_OVERFLOW, STEP_EXHAUSTED, CompileError, Program, Trap)
from .runtime import (EquivalenceVerdict, ExecEnv, ExecError, ExecResult, ProfileError,
                      RangeProfile, VarStats, compile_unit, equivalent, load_dataset, profile,
                      run, save_dataset)

__all__ = [
    "ASSERTION", "DIV_ZERO", "FREE_INVALID", "ILLEGAL_SHIFT", "OUT_OF_BOUNDS", "STACK_OVERFLOW",
    "STEP_EXHAUSTED", "CompileError", "Program", "Trap", "EquivalenceVerdict", "ExecEnv",
    "ExecError", "ExecResult", "ProfileError", "RangeProfile", "VarStats", "compile_unit",
    "equivalent", "load_dataset", "profile", "run", "save_dataset",
]
