"""Repair-template library and similarity retrieval."""
from .embed import Embedding, HttpEmbedder, TfidfEmbedder, make_embedder, normalize
from .library import (LibraryError, RepairTemplate, StrategyEntry, TEMPLATE_DIR, STRATEGY_DIR,
                      bundled_library, bundled_strategies, lint_template, load_library,
                      load_strategies, write_manifest)
from .retrieve import Retriever, RetrievalError, retrieve, retrieve_strategy


def embed(text: str) -> Embedding:
    """Embedding of ``text`` under the bundled library's TF-IDF vocabulary."""
    from .retrieve import _bundled
    return _bundled("templates").embedder.embed(text)


__all__ = [
    "Embedding", "HttpEmbedder", "TfidfEmbedder", "make_embedder", "normalize", "LibraryError",
    "RepairTemplate", "StrategyEntry", "TEMPLATE_DIR", "STRATEGY_DIR", "bundled_library",
    "bundled_strategies", "lint_template", "load_library", "load_strategies", "write_manifest",
    "Retriever", "RetrievalError", "retrieve", "retrieve_strategy", "embed",
]
