"""Chat-completion backends: live HTTP, record/replay cassettes, oracle, scripted."""
from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Optional, Sequence, Union

from .ledger import CostLedger, LlmExchange
from .prompt import PromptBundle, Stage
from .tokenizer import count_tokens


class BackendError(Exception):
    pass


class UnrecordedPrompt(BackendError):
    def __init__(self, key: str):
        super().__init__(f"UnrecordedPrompt: no cassette entry for prompt {key}")
        self.key = key


@dataclass(frozen=True)
class Completion:
    text: str
    input_tokens: int
    output_tokens: int
    native_usage: Optional[dict] = None


def _counted(bundle: PromptBundle, text: str, native: Optional[dict] = None) -> Completion:
    return Completion(text, count_tokens(bundle.serialized), count_tokens(text), native)


class Backend:
    id = "backend"

    def complete(self, bundle: PromptBundle) -> Completion:  # pragma: no cover - interface
        raise NotImplementedError


class LiveBackend(Backend):
    """OpenAI-style chat completion over HTTP."""

    def __init__(self, endpoint: str, model: str, api_key: Optional[str] = None, timeout: float = 120.0,
                 retries: int = 3, backoff: float = 1.0, client=None, sleep: Callable[[float], None] = time.sleep):
        self.endpoint = endpoint
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self._client = client
        self._sleep = sleep
        self.id = f"live:{model}"

    def _payload(self, bundle: PromptBundle) -> dict:
        return {"model": self.model, "messages": [
            {"role": "system", "content": bundle.preamble},
            {"role": "user", "content": bundle.serialized}]}

    def complete(self, bundle: PromptBundle) -> Completion:
        import httpx
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        client = self._client or httpx.Client(timeout=self.timeout)
        last = None
        try:
            for attempt in range(self.retries):
                if attempt:
                    self._sleep(self.backoff * 2 ** (attempt - 1))
                try:
                    r = client.post(self.endpoint, json=self._payload(bundle), headers=headers)
                except httpx.HTTPError as e:
                    last = f"transport error: {e}"
                    continue
                if r.status_code == 429 or r.status_code >= 500:
                    last = f"HTTP {r.status_code}"
                    continue
                if r.status_code >= 400:
                    raise BackendError(f"HTTP {r.status_code}: {r.text[:200]}")
                try:
                    body = r.json()
                    text = body["choices"][0]["message"]["content"]
                except (ValueError, KeyError, IndexError, TypeError) as e:
                    raise BackendError(f"malformed response: {e}") from e
                if not isinstance(text, str):
                    raise BackendError("malformed response: content is not text")
                return _counted(bundle, text, body.get("usage"))
        finally:
            if self._client is None:
                client.close()
        raise BackendError(f"request failed after {self.retries} attempts ({last})")


def _read_cassette(path: Path) -> dict[str, dict]:
    out: dict[str, dict] = {}
    if not path.exists():
        return out
    for n, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise BackendError(f"{path}:{n}: bad cassette line ({e})") from e
        out.setdefault(obj["key"], obj)
    return out


class RecordBackend(Backend):
    """Pass calls through to ``inner`` and append them to a JSONL cassette."""

    def __init__(self, inner: Backend, path: Union[str, Path]):
        self.inner = inner
        self.path = Path(path)
        self._lock = threading.Lock()
        self._known = set(_read_cassette(self.path))
        self.id = "record"

    def complete(self, bundle: PromptBundle) -> Completion:
        c = self.inner.complete(bundle)
        with self._lock:
            if bundle.key not in self._known:
                self._known.add(bundle.key)
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with self.path.open("a", encoding="utf-8") as f:
                    f.write(json.dumps({"key": bundle.key, "stage": bundle.stage.value, "response": c.text,
                                        "input_tokens": c.input_tokens, "output_tokens": c.output_tokens},
                                       sort_keys=True) + "\n")
        return c


class ReplayBackend(Backend):
    def __init__(self, path: Union[str, Path, Sequence[Union[str, Path]]]):
        paths = [path] if isinstance(path, (str, Path)) else list(path)
        self.entries: dict[str, dict] = {}
        for p in paths:
            for k, v in _read_cassette(Path(p)).items():
                self.entries.setdefault(k, v)
        self.id = "replay"

    def complete(self, bundle: PromptBundle) -> Completion:
        e = self.entries.get(bundle.key)
        if e is None:
            raise UnrecordedPrompt(bundle.key)
        return Completion(e["response"], int(e["input_tokens"]), int(e["output_tokens"]))


class ScriptedBackend(Backend):
    """Canned responses: a list consumed in order (the last one repeats) or a callable."""

    def __init__(self, responses: Union[Sequence[str], Callable[[PromptBundle, int], str]]):
        self._responses = responses
        self._calls = 0
        self._lock = threading.Lock()
        self.id = "scripted"

    def complete(self, bundle: PromptBundle) -> Completion:
        with self._lock:
            i = self._calls
            self._calls += 1
        if callable(self._responses):
            text = self._responses(bundle, i)
        else:
            if not self._responses:
                raise BackendError("scripted backend has no responses")
            text = self._responses[min(i, len(self._responses) - 1)]
        return _counted(bundle, text)


def fenced(code: str) -> str:
    return "```c\n" + code.rstrip("\n") + "\n```\n"


class OracleBackend(Backend):
    """Answers with known-good programs.

    REPAIR returns the golden repair when one is registered for the task and
    otherwise the deterministic script repair of the prompt's program.
    PPA_OPT applies the deterministic pragma rules to the report in the log.
    """

    def __init__(self, golden: Optional[str] = None):
        self.golden = golden
        self.id = "oracle"

    def complete(self, bundle: PromptBundle) -> Completion:
        if bundle.stage is Stage.DETECT_EXTRA:
            return _counted(bundle, "none")
        if bundle.stage is Stage.REPAIR:
            text = self.golden if self.golden is not None else self._scripted(bundle.program)
            return _counted(bundle, fenced(text))
        if bundle.stage is Stage.PPA_OPT:
            return _counted(bundle, fenced(self._ppa(bundle)))
        return _counted(bundle, fenced(bundle.program))

    @staticmethod
    def _scripted(program: str) -> str:
        from ..cfront.source import SourceUnit
        from ..script_repair import script_pass
        return script_pass(SourceUnit.from_bytes("prompt.c", program)).unit.text

    @staticmethod
    def _ppa(bundle: PromptBundle) -> str:
        from ..cfront.source import SourceUnit
        from ..ppa import BottleneckReport, optimize
        unit = SourceUnit.from_bytes("prompt.c", bundle.program)
        try:
            report = BottleneckReport.from_json(json.loads(bundle.error_log))
        except (ValueError, KeyError):
            return bundle.program
        return optimize(unit, report).unit.text


def complete(bundle: PromptBundle, backend: Backend, ledger: Optional[CostLedger] = None) -> LlmExchange:
    """Run one exchange; the ledger (if any) records it, failures included."""
    t0 = time.perf_counter()
    seq = ledger.next_seq() if ledger is not None else 0
    try:
        c = backend.complete(bundle)
    except BackendError as e:
        ex = LlmExchange(seq, bundle.stage.value, bundle.key, bundle.serialized, "", bundle.tokens, 0,
                         backend.id, time.perf_counter() - t0, None, str(e))
        if ledger is not None:
            ledger.append(ex)
        raise
    ex = LlmExchange(seq, bundle.stage.value, bundle.key, bundle.serialized, c.text, c.input_tokens,
                     c.output_tokens, backend.id, time.perf_counter() - t0, c.native_usage)
    if ledger is not None:
        ex = ledger.append(ex)
    return ex


def make_backend(mode: str, *, cassette: Optional[Union[str, Path]] = None, endpoint: Optional[str] = None,
                 model: str = "gpt-4-turbo", api_key: Optional[str] = None, golden: Optional[str] = None,
                 inner: Optional[Backend] = None) -> Backend:
    """Backend for a configured mode: live, record, replay, oracle."""
    if mode == "oracle":
        return OracleBackend(golden)
    if mode == "replay":
        if cassette is None:
            raise ValueError("replay mode needs a cassette")
        return ReplayBackend(cassette)
    if mode == "live":
        if not endpoint:
            raise ValueError("live mode needs an endpoint")
        return LiveBackend(endpoint, model, api_key)
    if mode == "record":
        if cassette is None:
            raise ValueError("record mode needs a cassette")
        base = inner or (LiveBackend(endpoint, model, api_key) if endpoint else OracleBackend(golden))
        return RecordBackend(base, cassette)
    raise ValueError(f"unknown backend mode {mode!r}")
