from __future__ import annotations

import json
import math
import random
import re
import shutil
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from hlsrepair.detect import ErrorClass
from hlsrepair.rag import (LibraryError, RepairTemplate, RetrievalError, Retriever, TEMPLATE_DIR, TfidfEmbedder,
                           bundled_library, bundled_strategies, embed, lint_template, load_library, normalize,
                           retrieve, retrieve_strategy, write_manifest)

from canon import PROGRAMS, canonical_log, mutate


def test_bundled_library_loads_and_covers_every_class():
    lib = load_library(TEMPLATE_DIR)
    per_class = Counter(t.error_class for t in lib)
    assert len(lib) >= 16
    assert all(per_class[c] >= 2 for c in PROGRAMS)


def test_bundled_strategies():
    names = {s.name for s in bundled_strategies()}
    assert {"loop-unroll", "pipeline", "memory-dual-port", "design-goal-area"} <= names


def test_lint_rejects_recursing_repair():
    t = next(t for t in bundled_library() if t.id == "t3-tail-recursion")
    bad = RepairTemplate(t.id, t.error_class, t.message_pattern, t.guidance,
                         t.violation_example, t.violation_example)
    with pytest.raises(LibraryError, match="still shows T3"):
        lint_template(bad)


def test_empty_directory(tmp_path):
    assert load_library(tmp_path) == []
    with pytest.raises(RetrievalError):
        Retriever([]).retrieve("ERROR [RECURSION]: x", 1)


def test_manifest_hash_is_checked(tmp_path):
    for p in TEMPLATE_DIR.glob("t3-*.json"):
        shutil.copy(p, tmp_path / p.name)
    write_manifest(tmp_path)
    assert len(load_library(tmp_path)) == 2
    p = tmp_path / "t3-tail-recursion.json"
    obj = json.loads(p.read_text())
    obj["guidance"] += " Edited."
    p.write_text(json.dumps(obj))
    with pytest.raises(LibraryError, match="hash"):
        load_library(tmp_path)


def test_embedding_unit_norm_and_empty():
    e = embed("recursion error in function BFS")
    assert e.dot(e) == pytest.approx(1.0)
    assert embed("").is_zero


def _oracle_cosine(query: str, docs: list[str], target: str) -> float:
    """Independent smoothed TF-IDF: idf = ln((1+N)/(1+df)) + 1, raw counts."""
    bags = [Counter(normalize(d)) for d in docs]
    n = len(bags)
    idf = {t: math.log((1 + n) / (1 + sum(t in b for b in bags))) + 1 for b in bags for t in b}

    def vec(bag):
        v = {t: c * idf[t] for t, c in bag.items() if t in idf}
        norm = math.sqrt(sum(x * x for x in v.values()))
        return {t: x / norm for t, x in v.items()}

    q, d = vec(Counter(normalize(query))), vec(Counter(normalize(target)))
    return sum(x * d.get(t, 0.0) for t, x in q.items())


def test_recursion_query_prefers_recursion_template():
    lib = bundled_library()
    docs = [t.document for t in lib]
    q = "recursion error in function BFS"
    rec = next(t for t in lib if t.id == "t3-tail-recursion")
    ptr = next(t for t in lib if t.id == "t1-pointer-parameter")
    o_rec, o_ptr = _oracle_cosine(q, docs, rec.document), _oracle_cosine(q, docs, ptr.document)
    assert o_rec > o_ptr
    emb = TfidfEmbedder(docs)
    assert emb.embed(q).dot(emb.embed(rec.document)) == pytest.approx(o_rec)
    assert emb.embed(q).dot(emb.embed(ptr.document)) == pytest.approx(o_ptr)


def test_normalization_hides_identifiers_and_lines():
    a = normalize("ERROR [RECURSION]: function 'BFS' calls itself at line 12")
    b = normalize("ERROR [RECURSION]: function 'walk_tree' calls itself at line 907")
    assert a == b


def test_bfs_log_retrieves_recursion_template():
    top, _ = retrieve("ERROR [RECURSION]: function 'BFS' calls itself", 1)[0]
    assert top.error_class is ErrorClass.T3_RECURSION


@pytest.mark.parametrize("cls", list(PROGRAMS), ids=lambda c: c.value)
def test_canonical_top1_class(cls):
    top, score = retrieve(canonical_log(cls), 3)[0]
    assert top.error_class is cls and 0 < score <= 1


def test_mutated_queries_keep_class():
    rng = random.Random(7)
    for cls in PROGRAMS:
        log = canonical_log(cls)
        for _ in range(20):
            assert retrieve(mutate(log, rng), 1)[0][0].error_class is cls


def test_two_class_log_gets_one_template_each():
    log = canonical_log(ErrorClass.T1_POINTER) + "\n" + canonical_log(ErrorClass.T2_DYNAMIC_ARRAY)
    got = {t.error_class for t, _ in retrieve(log, 2)}
    assert got == {ErrorClass.T1_POINTER, ErrorClass.T2_DYNAMIC_ARRAY}


def test_k_larger_than_library():
    lib = bundled_library()
    assert len(retrieve("ERROR [POINTER]: x", len(lib) + 5)) == len(lib)
    with pytest.raises(ValueError):
        retrieve("ERROR [POINTER]: x", 0)


@settings(max_examples=60, deadline=None)
@given(st.text(min_size=1, max_size=80))
def test_scores_bounded_sorted_deterministic(text):
    try:
        res = Retriever(bundled_library()).scores(text)
    except RetrievalError:
        assert not [ln for ln in text.splitlines() if normalize(ln)]
        return
    scores = [s for _, s in res]
    assert all(0.0 <= s <= 1.0 for s in scores)
    assert scores == sorted(scores, reverse=True)
    assert [t.id for t, _ in res] == [t.id for t, _ in Retriever(bundled_library()).scores(text)]


def test_tie_break_by_id():
    t = bundled_library()[0]
    twins = [RepairTemplate(i, t.error_class, t.message_pattern, t.guidance, t.violation_example,
                            t.repaired_example) for i in ("zeta", "alpha", "mid")]
    assert [x.id for x, _ in Retriever(twins).retrieve(t.message_pattern, 3)] == ["alpha", "mid", "zeta"]


def test_strategy_retrieval():
    assert retrieve_strategy("loop at line 12 dominates latency")[0][0].name == "loop-unroll"
    assert retrieve_strategy("memory interface limiting factor")[0][0].name == "memory-dual-port"
    with pytest.raises(RetrievalError, match="empty query"):
        retrieve_strategy("")


def test_http_embedder_contract():
    import httpx
    from hlsrepair.rag import HttpEmbedder

    def handler(request):
        texts = json.loads(request.content)["texts"]
        return httpx.Response(200, json={"vectors": [[len(t), 0.0, 1.0] for t in texts]})

    emb = HttpEmbedder("http://embed.test/v1", client=httpx.Client(transport=httpx.MockTransport(handler)))
    v = emb.embed("abc")
    assert v.dot(v) == pytest.approx(1.0)
    assert v.weights[0] == pytest.approx(3 / math.sqrt(10))
