"""Repair templates and optimization strategies: loading, linting, manifests."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Union

from ..cfront.source import SourceUnit
from ..detect import ErrorClass

ASSETS = Path(__file__).resolve().parent / "assets"
TEMPLATE_DIR = ASSETS / "templates"
STRATEGY_DIR = ASSETS / "strategies"
MANIFEST = "manifest.json"

_TEMPLATE_FIELDS = ("id", "error_class", "message_pattern", "guidance", "violation_example", "repaired_example")
_STRATEGY_FIELDS = ("id", "name", "concept", "parameters", "example")


class LibraryError(Exception):
    pass


@dataclass(frozen=True)
class RepairTemplate:
    id: str
    error_class: ErrorClass
    message_pattern: str
    guidance: str
    violation_example: str
    repaired_example: str

    @property
    def document(self) -> str:
        """Text the retriever indexes; the compiler message counts twice."""
        return f"{self.message_pattern}\n{self.message_pattern}\n{self.guidance}"

    def to_json(self) -> dict:
        d = asdict(self)
        d["error_class"] = self.error_class.value
        return d


@dataclass(frozen=True)
class StrategyEntry:
    id: str
    name: str
    concept: str
    parameters: dict = field(default_factory=dict)
    example: str = ""

    @property
    def document(self) -> str:
        params = " ".join(f"{k} {v}" for k, v in self.parameters.items())
        return f"{self.name.replace('-', ' ')}\n{self.concept}\n{params}"


def _read(path: Path, fields: tuple[str, ...]) -> dict:
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise LibraryError(f"{path.name}: unreadable ({e})") from e
    missing = [f for f in fields if f not in obj]
    if missing:
        raise LibraryError(f"{path.name}: missing field(s) {', '.join(missing)}")
    return obj


def _files(path: Path) -> list[Path]:
    return sorted(p for p in path.glob("*.json") if p.name != MANIFEST)


def _check_manifest(path: Path) -> None:
    mf = path / MANIFEST
    if not mf.exists():
        return
    listed = json.loads(mf.read_text(encoding="utf-8"))
    entries = {e["file"]: e["sha256"] for e in listed.get("entries", [])}
    present = {p.name for p in _files(path)}
    if set(entries) != present:
        extra = sorted(present ^ set(entries))
        raise LibraryError(f"manifest does not match directory contents: {', '.join(extra)}")
    for name, digest in entries.items():
        got = hashlib.sha256((path / name).read_bytes()).hexdigest()
        if got != digest:
            raise LibraryError(f"{name}: content hash differs from manifest")


def write_manifest(path: Union[str, Path], version: str = "1") -> Path:
    path = Path(path)
    entries = []
    for p in _files(path):
        obj = json.loads(p.read_text(encoding="utf-8"))
        entries.append({"id": obj.get("id", p.stem), "file": p.name,
                        "sha256": hashlib.sha256(p.read_bytes()).hexdigest()})
    out = path / MANIFEST
    out.write_text(json.dumps({"version": version, "entries": entries}, indent=2) + "\n", encoding="utf-8")
    return out


def _classes_in(code: str, cls: ErrorClass) -> tuple[bool, list]:
    """(parses, diagnostics of ``cls``) for a code sample."""
    from ..detect import check
    unit = SourceUnit.from_bytes("example.c", code)
    if not unit.ok:
        return False, []
    profile = None
    if cls is ErrorClass.T4_BIT_WIDTH:
        from ..interp import ExecEnv, ProfileError
        from ..interp import profile as run_profile
        try:
            profile = run_profile(unit, "main", [ExecEnv({}, {})])
        except (ProfileError, Exception):
            profile = None
    report = check(unit, profile=profile)
    return True, [d for d in report.diagnostics if d.error_class is cls]


def lint_template(t: RepairTemplate) -> None:
    """Raise :class:`LibraryError` unless the examples behave as documented."""
    parses, found = _classes_in(t.violation_example, t.error_class)
    if not parses:
        raise LibraryError(f"{t.id}: violation_example does not parse")
    if not found:
        raise LibraryError(f"{t.id}: violation_example shows no {t.error_class.value} diagnostic")
    parses, found = _classes_in(t.repaired_example, t.error_class)
    if not parses:
        raise LibraryError(f"{t.id}: repaired_example does not parse")
    if found:
        raise LibraryError(f"{t.id}: repaired_example still shows {t.error_class.value}: {found[0].message}")


def load_library(path: Union[str, Path] = TEMPLATE_DIR, lint: bool = True) -> list[RepairTemplate]:
    path = Path(path)
    if not path.is_dir():
        raise LibraryError(f"{path}: not a directory")
    _check_manifest(path)
    out = []
    seen = set()
    for p in _files(path):
        obj = _read(p, _TEMPLATE_FIELDS)
        try:
            cls = ErrorClass.parse(str(obj["error_class"]))
        except ValueError as e:
            raise LibraryError(f"{obj['id']}: unknown error class {obj['error_class']!r}") from e
        if obj["id"] in seen:
            raise LibraryError(f"{obj['id']}: duplicate template id")
        seen.add(obj["id"])
        t = RepairTemplate(obj["id"], cls, obj["message_pattern"], obj["guidance"],
                           obj["violation_example"], obj["repaired_example"])
        if lint:
            lint_template(t)
        out.append(t)
    return out


def load_strategies(path: Union[str, Path] = STRATEGY_DIR) -> list[StrategyEntry]:
    path = Path(path)
    if not path.is_dir():
        raise LibraryError(f"{path}: not a directory")
    _check_manifest(path)
    out = []
    for p in _files(path):
        obj = _read(p, _STRATEGY_FIELDS)
        s = StrategyEntry(obj["id"], obj["name"], obj["concept"], dict(obj["parameters"]), obj["example"])
        if not SourceUnit.from_bytes(f"{s.id}.c", s.example).ok:
            raise LibraryError(f"{s.id}: example does not parse")
        out.append(s)
    return out


@lru_cache(maxsize=1)
def bundled_library() -> tuple[RepairTemplate, ...]:
    return tuple(load_library(TEMPLATE_DIR))


@lru_cache(maxsize=1)
def bundled_strategies() -> tuple[StrategyEntry, ...]:
    return tuple(load_strategies(STRATEGY_DIR))
