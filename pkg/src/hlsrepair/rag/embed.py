"""Query normalization and embeddings (TF-IDF by default, HTTP optional)."""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

_QUOTED = re.compile(r"'[^'\n]*'|\"[^\"\n]*\"")
_NUMBER = re.compile(r"\b\d+\b")
_WORD = re.compile(r"[a-z_][a-z0-9_]*")
_STOP = frozenset("a an the of to in on at is are be by for with and or it its as this that from".split())


def normalize(text: str) -> list[str]:
    """Lowercased terms; quoted identifiers and numbers become placeholders."""
    text = _QUOTED.sub(" qid ", text)
    text = _NUMBER.sub(" num ", text.lower())
    return [w for w in _WORD.findall(text) if w not in _STOP]


@dataclass(frozen=True)
class Embedding:
    weights: dict = field(default_factory=dict)

    @property
    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.weights.values()))

    def dot(self, other: "Embedding") -> float:
        a, b = (self.weights, other.weights) if len(self.weights) <= len(other.weights) else (other.weights, self.weights)
        return sum(v * b.get(k, 0.0) for k, v in a.items())

    @property
    def is_zero(self) -> bool:
        return not self.weights


def _unit(weights: dict) -> Embedding:
    n = math.sqrt(sum(v * v for v in weights.values()))
    if n == 0:
        return Embedding({})
    return Embedding({k: v / n for k, v in weights.items() if v})


class TfidfEmbedder:
    """Smoothed TF-IDF over a fixed corpus; unknown query terms are ignored."""

    def __init__(self, corpus: Iterable[str]):
        docs = [Counter(normalize(d)) for d in corpus]
        n = len(docs)
        df = Counter()
        for d in docs:
            df.update(d.keys())
        self.idf = {t: math.log((1 + n) / (1 + c)) + 1.0 for t, c in df.items()}

    @property
    def vocabulary(self) -> list[str]:
        return sorted(self.idf)

    def embed(self, text: str) -> Embedding:
        tf = Counter(t for t in normalize(text) if t in self.idf)
        return _unit({t: c * self.idf[t] for t, c in sorted(tf.items())})

    def embed_many(self, texts: Sequence[str]) -> list[Embedding]:
        return [self.embed(t) for t in texts]


class HttpEmbedder:
    """External embedding service: POST ``{"texts": [...]}`` -> ``{"vectors": [[...]]}``."""

    def __init__(self, url: str, timeout: float = 30.0, client=None):
        self.url = url
        self.timeout = timeout
        self._client = client

    def embed_many(self, texts: Sequence[str]) -> list[Embedding]:
        import httpx
        client = self._client or httpx.Client(timeout=self.timeout)
        try:
            r = client.post(self.url, json={"texts": list(texts)})
            r.raise_for_status()
            vectors = r.json()["vectors"]
        except (httpx.HTTPError, KeyError, ValueError) as e:
            raise RuntimeError(f"embedding service failed: {e}") from e
        finally:
            if self._client is None:
                client.close()
        if len(vectors) != len(texts):
            raise RuntimeError("embedding service returned the wrong number of vectors")
        return [_unit({i: max(0.0, float(v)) for i, v in enumerate(vec)}) for vec in vectors]

    def embed(self, text: str) -> Embedding:
        return self.embed_many([text])[0]


def make_embedder(corpus: Sequence[str], backend: Optional[str] = None, url: Optional[str] = None):
    """``backend`` is ``tfidf`` (default) or ``http``."""
    if backend in (None, "", "tfidf"):
        return TfidfEmbedder(corpus)
    if backend == "http":
        if not url:
            raise ValueError("http embedding backend needs a url")
        return HttpEmbedder(url)
    raise ValueError(f"unknown embedding backend {backend!r}")
