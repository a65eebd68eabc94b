"""Prompt assembly, model backends, token counting and the cost ledger."""
from .backends import (Backend, BackendError, Completion, LiveBackend, OracleBackend, RecordBackend,
                       ReplayBackend, ScriptedBackend, UnrecordedPrompt, complete, fenced, make_backend)
from .extract import ExtractError, extract_program
from .ledger import PRICE_IN, PRICE_OUT, CostLedger, LlmExchange, cost, exchange_cost, format_cost
from .prompt import DEFAULT_BUDGET, PREAMBLES, PromptBundle, PromptTooLarge, Stage, build_prompt
from .tokenizer import count_tokens, tokenize

__all__ = [
    "Backend", "BackendError", "Completion", "LiveBackend", "OracleBackend", "RecordBackend",
    "ReplayBackend", "ScriptedBackend", "UnrecordedPrompt", "complete", "fenced", "make_backend",
    "ExtractError", "extract_program", "PRICE_IN", "PRICE_OUT", "CostLedger", "LlmExchange", "cost",
    "exchange_cost", "format_cost", "DEFAULT_BUDGET", "PREAMBLES", "PromptBundle", "PromptTooLarge",
    "Stage", "build_prompt", "count_tokens", "tokenize",
]
