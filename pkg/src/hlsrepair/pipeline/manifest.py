"""Benchmark manifests: which fixtures to run and with what data."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from ..detect import ErrorClass


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class Benchmark:
    id: str
    file: Path
    entry: str
    dataset: Optional[Path] = None
    expected_classes: tuple[str, ...] = ()
    name: str = ""
    golden: Optional[Path] = None
    report: Optional[Path] = None

    @property
    def error_class(self) -> str:
        return self.expected_classes[0] if self.expected_classes else "-"

    def load_dataset(self):
        from ..interp import load_dataset
        return load_dataset(self.dataset) if self.dataset else []

    def golden_text(self) -> Optional[str]:
        return self.golden.read_text(encoding="utf-8") if self.golden else None


def load_manifest(path: Union[str, Path]) -> list[Benchmark]:
    """Parse and validate a manifest; every referenced file must exist."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ManifestError(f"{path}: {e}") from e
    items = raw["benchmarks"] if isinstance(raw, dict) else raw
    if not isinstance(items, list):
        raise ManifestError(f"{path}: expected a list of benchmarks")
    base = path.parent
    out, seen = [], set()
    for i, obj in enumerate(items):
        for key in ("id", "file", "entry"):
            if key not in obj:
                raise ManifestError(f"{path}: benchmark {i} lacks '{key}'")
        if obj["id"] in seen:
            raise ManifestError(f"{path}: duplicate benchmark id {obj['id']!r}")
        seen.add(obj["id"])
        classes = tuple(obj.get("expected_classes", ()))
        for c in classes:
            try:
                ErrorClass.parse(c)
            except ValueError as e:
                raise ManifestError(f"{path}: benchmark {obj['id']}: unknown class {c!r}") from e

        def rel(key):
            v = obj.get(key)
            if v is None:
                return None
            p = base / v
            if not p.exists():
                raise ManifestError(f"{path}: benchmark {obj['id']}: missing {key} file {v}")
            return p
        out.append(Benchmark(obj["id"], rel("file"), obj["entry"], rel("dataset"), classes,
                             obj.get("name", obj["id"]), rel("golden"), rel("report")))
    return out
