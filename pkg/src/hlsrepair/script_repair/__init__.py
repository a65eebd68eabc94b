"""Deterministic rewrite passes run before any LLM query."""
from .base import Fix, PassResult, Source
from .driver import AppliedEdit, RewriteOutcome, script_pass
from .passes import (MAX_DEPTH, PASS_NAMES, PASSES, fix_boolean, fix_dynamic, fix_exception,
                     fix_incomplete, fix_pointer, fix_recursion)

__all__ = [
    "Fix", "PassResult", "Source", "AppliedEdit", "RewriteOutcome", "script_pass", "MAX_DEPTH",
    "PASS_NAMES", "PASSES", "fix_boolean", "fix_dynamic", "fix_exception", "fix_incomplete",
    "fix_pointer", "fix_recursion",
]
