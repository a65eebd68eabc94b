"""Bottleneck reports: which code segments to optimize and why."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Union


class Metric(str, Enum):
    AREA = "AREA"
    POWER = "POWER"
    LATENCY = "LATENCY"
    MEMORY_BANDWIDTH = "MEMORY_BANDWIDTH"

    @classmethod
    def parse(cls, text: str) -> "Metric":
        t = text.strip().upper().replace("-", "_").replace(" ", "_")
        if t in ("MEMORY", "BANDWIDTH"):
            t = "MEMORY_BANDWIDTH"
        return cls(t)


_WORDS = {
    Metric.AREA: "area resource usage of the function is too large",
    Metric.POWER: "power of the function is too high",
    Metric.LATENCY: "loop dominates latency",
    Metric.MEMORY_BANDWIDTH: "memory interface is the limiting factor",
}


@dataclass(frozen=True)
class BottleneckEntry:
    target: str             # function name, "line:N" for a loop, or an array name
    metric: Metric
    magnitude: float = 1.0
    note: str = ""

    def __post_init__(self):
        if not 0.0 <= self.magnitude <= 1.0:
            raise ValueError(f"magnitude {self.magnitude} outside [0, 1]")

    @property
    def query(self) -> str:
        """Text used to retrieve a strategy for this entry."""
        return f"{_WORDS[self.metric]}. {self.note}".strip()

    def to_json(self) -> dict:
        return {"target": self.target, "metric": self.metric.value, "magnitude": self.magnitude, "note": self.note}


@dataclass(frozen=True)
class BottleneckReport:
    entries: tuple[BottleneckEntry, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @classmethod
    def from_json(cls, obj: dict) -> "BottleneckReport":
        return cls(tuple(BottleneckEntry(str(e["target"]), Metric.parse(e["metric"]),
                                         float(e.get("magnitude", 1.0)), str(e.get("note", "")))
                         for e in obj.get("entries", [])))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "BottleneckReport":
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        if path.suffix.lower() == ".csv":
            return cls.from_csv(text)
        return cls.from_json(json.loads(text))

    @classmethod
    def from_csv(cls, text: str) -> "BottleneckReport":
        """Rows of ``name,metric,value`` (a header row is optional)."""
        rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
        if rows and rows[0][0].strip().lower() in ("name", "target"):
            rows = rows[1:]
        out = []
        for r in rows:
            name, metric = r[0].strip(), r[1].strip()
            value = float(r[2]) if len(r) > 2 and r[2].strip() else 1.0
            out.append(BottleneckEntry(name, Metric.parse(metric), min(1.0, max(0.0, value))))
        return cls(tuple(out))

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)
