"""Similarity search over templates and strategies."""
from __future__ import annotations

import os
from typing import Optional, Sequence

from .embed import Embedding, make_embedder, normalize
from .library import RepairTemplate, StrategyEntry, bundled_library, bundled_strategies

EMBED_ENV = "HLSREPAIR_EMBEDDER"
EMBED_URL_ENV = "HLSREPAIR_EMBEDDER_URL"


class RetrievalError(Exception):
    pass


def _lines(log: str) -> list[str]:
    return [ln for ln in log.splitlines() if normalize(ln)]


class Retriever:
    """Ranks library entries against a log.

    Each log line is embedded separately and an entry scores its best cosine
    over the lines, so one long log does not dilute a single matching message.
    Selection first takes the winner of every line (so a log with several
    error classes gets one template per class), then fills up by score.
    """

    def __init__(self, entries: Sequence, embedder=None):
        self.entries = list(entries)
        if embedder is None:
            embedder = make_embedder([e.document for e in self.entries],
                                     os.environ.get(EMBED_ENV), os.environ.get(EMBED_URL_ENV))
        self.embedder = embedder
        self._vectors: list[Embedding] = embedder.embed_many([e.document for e in self.entries]) \
            if self.entries else []

    def scores(self, log: str) -> list[tuple[object, float]]:
        if not self.entries:
            raise RetrievalError("library is empty")
        lines = _lines(log)
        if not lines:
            raise RetrievalError("empty query after normalization")
        qs = self._queries(log)
        out = []
        for e, v in zip(self.entries, self._vectors):
            s = max((min(1.0, max(0.0, q.dot(v))) for q in qs), default=0.0)
            out.append((e, round(s, 12)))
        out.sort(key=lambda p: (-p[1], p[0].id))
        return out

    def _queries(self, log: str) -> list[Embedding]:
        return [q for q in self.embedder.embed_many(_lines(log)) if not q.is_zero]

    def retrieve(self, log: str, k: int = 3) -> list[tuple[object, float]]:
        if k < 1:
            raise ValueError("k must be at least 1")
        ranked = self.scores(log)
        score = {id(e): s for e, s in ranked}
        winners = {}
        for q in self._queries(log):
            best = max(zip(self.entries, self._vectors), key=lambda p: (q.dot(p[1]), _neg(p[0].id)))
            if q.dot(best[1]) > 0:
                winners[id(best[0])] = best[0]
        picked = sorted(((e, score[i]) for i, e in winners.items()), key=lambda p: (-p[1], p[0].id))
        chosen = {id(e) for e, _ in picked[:k]}
        rest = [(e, s) for e, s in ranked if id(e) not in chosen]
        result = picked[:k] + rest[:max(0, k - len(picked[:k]))]
        result.sort(key=lambda p: (-p[1], p[0].id))
        return result


def _neg(s: str) -> tuple:
    # max() with ties resolved toward the lexicographically smallest id
    return tuple(-ord(c) for c in s) + (1,)


_default: dict[str, Retriever] = {}


def _bundled(kind: str) -> Retriever:
    if kind not in _default:
        entries = bundled_library() if kind == "templates" else bundled_strategies()
        _default[kind] = Retriever(entries)
    return _default[kind]


def retrieve(log: str, k: int = 3, library: Optional[Sequence[RepairTemplate]] = None) -> list[tuple[RepairTemplate, float]]:
    r = _bundled("templates") if library is None else Retriever(library)
    return r.retrieve(log, k)


def retrieve_strategy(report: str, k: int = 1,
                      library: Optional[Sequence[StrategyEntry]] = None) -> list[tuple[StrategyEntry, float]]:
    r = _bundled("strategies") if library is None else Retriever(library)
    return r.retrieve(report, k)
