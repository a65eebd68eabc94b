"""Run configuration shared by the pipeline and the CLI."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from ..llm.ledger import PRICE_IN, PRICE_OUT

MODES = ("live", "record", "replay", "oracle")


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    mode: str = "oracle"
    endpoint: Optional[str] = None
    model: str = "gpt-4-turbo"
    api_key_env: str = "OPENAI_API_KEY"
    cassette: Optional[str] = None
    price_in: Fraction = PRICE_IN
    price_out: Fraction = PRICE_OUT
    rag: bool = True
    scripts: bool = True
    detect_extra: bool = True
    q_max: int = 5
    rag_k: int = 3
    context_tokens: int = 16000
    check_rows: int = 100
    guard_bit: bool = False
    include_header: bool = True
    skip_passes: tuple = ()
    max_depth: int = 64
    compile_cmd: Optional[str] = None
    library: Optional[str] = None
    seed_base: int = 0
    parallelism: int = 1
    ppa_mode: str = "deterministic"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}, not {self.mode!r}")
        if self.mode in ("record", "replay") and not self.cassette:
            raise ConfigError(f"mode {self.mode} needs a cassette path")
        if self.mode == "live" and not self.endpoint:
            raise ConfigError("live mode needs an endpoint")
        for name in ("q_max", "rag_k", "context_tokens", "check_rows", "max_depth", "parallelism"):
            if int(getattr(self, name)) < 1:
                raise ConfigError(f"{name} must be at least 1")
        if self.ppa_mode not in ("deterministic", "llm"):
            raise ConfigError("ppa_mode must be deterministic or llm")
        from ..script_repair import PASS_NAMES
        bad = [p for p in self.skip_passes if p not in PASS_NAMES]
        if bad:
            raise ConfigError(f"unknown pass(es): {', '.join(bad)}")
        self.skip_passes = tuple(self.skip_passes)
        self.price_in = Fraction(self.price_in)
        self.price_out = Fraction(self.price_out)

    def replace(self, **changes) -> "Config":
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_mapping(cls, data: dict, base: Optional["Config"] = None) -> "Config":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        values = dataclasses.asdict(base) if base is not None else {}
        for k, v in data.items():
            if k in ("price_in", "price_out"):
                v = Fraction(str(v))
            elif k == "skip_passes":
                v = tuple(v) if isinstance(v, (list, tuple)) else tuple(x for x in str(v).split(",") if x)
            values[k] = v
        try:
            return cls(**values)
        except TypeError as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def load(cls, path: Union[str, Path], base: Optional["Config"] = None) -> "Config":
        import tomli
        try:
            data = tomli.loads(Path(path).read_text(encoding="utf-8"))
        except tomli.TOMLDecodeError as e:
            raise ConfigError(f"{path}: {e}") from e
        section = data.get("hlsrepair", data)
        return cls.from_mapping(section, base)

    def to_json(self) -> dict:
        d = dataclasses.asdict(self)
        d["price_in"] = str(self.price_in)
        d["price_out"] = str(self.price_out)
        d["skip_passes"] = list(self.skip_passes)
        return d
