"""Prompt bundles: the sections sent to the model for each stage."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .tokenizer import count_tokens

DEFAULT_BUDGET = 16000

_OUTPUT_CONTRACT = "Return one complete C program in a single fenced code block."


class Stage(str, Enum):
    DETECT_EXTRA = "DETECT_EXTRA"
    REPAIR = "REPAIR"
    BITWIDTH_SCRIPT = "BITWIDTH_SCRIPT"
    PPA_OPT = "PPA_OPT"


PREAMBLES = {
    Stage.DETECT_EXTRA: (
        "You are an expert in high-level synthesis. The log lists HLS incompatibilities found by a checker. "
        "Report any further incompatibility in the program that the log misses, one per line, in the form "
        "'ERROR [KEYWORD]: message at line N'. Answer 'none' if there is nothing to add."),
    Stage.REPAIR: (
        "You are an expert in high-level synthesis. Rewrite the program so that an HLS tool accepts it, "
        "fixing every error in the log while keeping the observable behaviour of every function unchanged. "
        + _OUTPUT_CONTRACT),
    Stage.BITWIDTH_SCRIPT: (
        "You are an expert in high-level synthesis. Write a C++ program that runs the entry function of the "
        "program over the dataset described in the log and prints, for every integer variable, a line "
        "'name min max' with the smallest and largest value it held. " + _OUTPUT_CONTRACT),
    Stage.PPA_OPT: (
        "You are an expert in high-level synthesis. Apply the optimization strategies below to the code segments "
        "named in the bottleneck report by adding or adjusting pragmas only; do not change the computation. "
        + _OUTPUT_CONTRACT),
}


class PromptTooLarge(Exception):
    def __init__(self, tokens: int, budget: int):
        super().__init__(f"prompt needs {tokens} tokens, budget is {budget}")
        self.tokens = tokens
        self.budget = budget


def _fence(code: str) -> str:
    return "```c\n" + code.rstrip("\n") + "\n```"


@dataclass(frozen=True)
class PromptBundle:
    stage: Stage
    preamble: str
    error_log: str
    program: str
    references: tuple = ()      # ((template or strategy, score), ...)
    serialized: str = field(default="", compare=False)
    tokens: int = field(default=0, compare=False)

    @property
    def guidance_section(self) -> str:
        parts = []
        for ref, score in self.references:
            if hasattr(ref, "guidance"):
                parts.append(f"[{ref.id}] class {ref.error_class.value}, similarity {score:.3f}\n{ref.guidance}")
            else:
                params = "\n".join(f"- {k}: {v}" for k, v in ref.parameters.items())
                parts.append(f"[{ref.id}] {ref.name}, similarity {score:.3f}\n{ref.concept}\n{params}")
        return "\n\n".join(parts)

    @property
    def examples_section(self) -> str:
        parts = []
        for ref, _ in self.references:
            if hasattr(ref, "violation_example"):
                parts.append(f"[{ref.id}] violation:\n{_fence(ref.violation_example)}\n"
                             f"[{ref.id}] repaired:\n{_fence(ref.repaired_example)}")
            else:
                parts.append(f"[{ref.id}] example:\n{_fence(ref.example)}")
        return "\n\n".join(parts)

    @property
    def program_section(self) -> str:
        return _fence(self.program)

    @property
    def program_tokens(self) -> int:
        return count_tokens(self.program_section)

    @property
    def key(self) -> str:
        """SHA-256 of the serialized prompt: the cassette key."""
        return hashlib.sha256(self.serialized.encode("utf-8")).hexdigest()

    @property
    def user_message(self) -> str:
        return self.serialized.split("\n", 2)[2] if self.serialized.count("\n") >= 2 else self.serialized


def serialize(stage: Stage, preamble: str, references, error_log: str, program: str) -> str:
    b = PromptBundle(stage, preamble, error_log, program, tuple(references))
    sections = [
        f"## SYSTEM ({stage.value})\n{preamble}",
        "## GUIDANCE\n" + (b.guidance_section or "(none)"),
        "## EXAMPLES\n" + (b.examples_section or "(none)"),
        "## ERROR LOG\n" + (error_log.strip() or "(empty)"),
        "## PROGRAM\n" + b.program_section,
    ]
    return "\n\n".join(sections) + "\n"


def build_prompt(stage: Stage | str, program, error_log: str = "", references: Sequence = (),
                 budget: int = DEFAULT_BUDGET) -> PromptBundle:
    """Assemble a bundle, dropping the lowest-scored references until it fits."""
    stage = Stage(stage)
    text = program.text if hasattr(program, "text") else str(program)
    refs = sorted(references, key=lambda p: (-p[1], p[0].id))
    while True:
        ser = serialize(stage, PREAMBLES[stage], refs, error_log, text)
        n = count_tokens(ser)
        if n <= budget:
            return PromptBundle(stage, PREAMBLES[stage], error_log, text, tuple(refs), ser, n)
        if not refs:
            raise PromptTooLarge(n, budget)
        refs = refs[:-1]
