"""The bundled 24-benchmark corpus: fixtures, goldens, datasets and cassettes."""
from __future__ import annotations

from pathlib import Path

ROOT = Path(__file__).resolve().parent
MANIFEST = ROOT / "manifest.json"
CASSETTES = ROOT / "cassettes"


def cassette(arm: str) -> Path:
    return CASSETTES / f"{arm}.jsonl"


def benchmarks():
    from ..pipeline.manifest import load_manifest
    return load_manifest(MANIFEST)
