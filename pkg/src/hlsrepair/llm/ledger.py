"""Exchanges and exact cost accounting."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

PRICE_IN = Fraction(1, 100)     # per 1K input tokens
PRICE_OUT = Fraction(3, 100)    # per 1K output tokens


@dataclass(frozen=True)
class LlmExchange:
    seq: int
    stage: str
    prompt_key: str
    prompt: str
    response: str
    input_tokens: int
    output_tokens: int
    backend: str
    latency: float = 0.0
    native_usage: Optional[dict] = None
    error: Optional[str] = None

    def to_json(self, with_timing: bool = True) -> dict:
        d = {"seq": self.seq, "stage": self.stage, "prompt_sha256": self.prompt_key,
             "input_tokens": self.input_tokens, "output_tokens": self.output_tokens,
             "backend": self.backend, "error": self.error}
        if with_timing:
            d["latency"] = self.latency
        return d


def exchange_cost(input_tokens: int, output_tokens: int, price_in: Fraction = PRICE_IN,
                  price_out: Fraction = PRICE_OUT) -> Fraction:
    return Fraction(input_tokens, 1000) * price_in + Fraction(output_tokens, 1000) * price_out


@dataclass
class CostLedger:
    price_in: Fraction = PRICE_IN
    price_out: Fraction = PRICE_OUT
    exchanges: list[LlmExchange] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def next_seq(self) -> int:
        with self._lock:
            return len(self.exchanges)

    def append(self, ex: LlmExchange) -> LlmExchange:
        with self._lock:
            if ex.seq != len(self.exchanges):
                ex = LlmExchange(len(self.exchanges), *[getattr(ex, f) for f in
                                 ("stage", "prompt_key", "prompt", "response", "input_tokens",
                                  "output_tokens", "backend", "latency", "native_usage", "error")])
            self.exchanges.append(ex)
            return ex

    def add_tokens(self, stage: str, input_tokens: int, output_tokens: int, backend: str = "manual") -> LlmExchange:
        return self.append(LlmExchange(0, stage, "", "", "", input_tokens, output_tokens, backend))

    @property
    def input_tokens(self) -> int:
        return sum(e.input_tokens for e in self.exchanges)

    @property
    def output_tokens(self) -> int:
        return sum(e.output_tokens for e in self.exchanges)

    @property
    def total(self) -> Fraction:
        return sum((exchange_cost(e.input_tokens, e.output_tokens, self.price_in, self.price_out)
                    for e in self.exchanges), Fraction(0))

    def count(self, stage: Optional[str] = None) -> int:
        return sum(1 for e in self.exchanges if stage is None or e.stage == stage)

    def merged(self, other: "CostLedger") -> "CostLedger":
        out = CostLedger(self.price_in, self.price_out)
        for e in [*self.exchanges, *other.exchanges]:
            out.append(e)
        return out

    def to_json(self, with_timing: bool = True) -> dict:
        return {"price_in_per_1k": str(self.price_in), "price_out_per_1k": str(self.price_out),
                "input_tokens": self.input_tokens, "output_tokens": self.output_tokens,
                "total": format_cost(self.total),
                "exchanges": [e.to_json(with_timing) for e in self.exchanges]}


def cost(ledger: CostLedger) -> Fraction:
    return ledger.total


def format_cost(amount: Fraction, places: int = 4) -> str:
    q = Fraction(10 ** places)
    v = (amount * q).numerator * 2 // (amount * q).denominator
    rounded = (v + 1) // 2  # half up
    s = str(rounded).rjust(places + 1, "0")
    return f"{s[:-places]}.{s[-places:]}"
