from __future__ import annotations

import json
import re
from fractions import Fraction

import httpx
import pytest
from hypothesis import given, settings, strategies as st

from hlsrepair.cfront import SourceUnit
from hlsrepair.llm import (BackendError, CostLedger, ExtractError, LiveBackend, OracleBackend, PREAMBLES,
                           PromptTooLarge, RecordBackend, ReplayBackend, ScriptedBackend, Stage, UnrecordedPrompt,
                           build_prompt, complete, cost, count_tokens, exchange_cost, extract_program, fenced,
                           format_cost, make_backend, tokenize)
from hlsrepair.rag import bundled_library, retrieve
from hlsrepair.script_repair import script_pass

PROG = "int f(int x) { bool b = false; b += x; return b; }\n"
LOG = "ERROR [BOOLEAN_OP]: operator '+=' applied to boolean variable 'b' at line 1"


def _oracle_tokens(text: str) -> int:
    n = 0
    for piece in re.findall(r"\w+|[^\w\s]", text):
        n += (len(piece) + 3) // 4 if re.match(r"\w", piece) else 1
    return n


def test_cost_examples():
    assert exchange_cost(1000, 1000) == Fraction(4, 100)
    assert exchange_cost(12000, 3000) == Fraction(21, 100)
    assert cost(CostLedger()) == 0
    led = CostLedger()
    led.add_tokens("REPAIR", 1000, 1000)
    assert format_cost(cost(led)) == "0.0400"
    assert format_cost(Fraction(1, 200000)) == "0.0000" and format_cost(Fraction(1, 20000)) == "0.0001"


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 50000), st.integers(0, 50000)), max_size=6),
       st.lists(st.tuples(st.integers(0, 50000), st.integers(0, 50000)), max_size=6))
def test_ledger_additivity(a, b):
    la, lb = CostLedger(), CostLedger()
    for i, o in a:
        la.add_tokens("REPAIR", i, o)
    for i, o in b:
        lb.add_tokens("REPAIR", i, o)
    both = la.merged(lb)
    assert cost(both) == cost(la) + cost(lb)
    assert cost(both) == sum(Fraction(i, 1000) / 100 + Fraction(o, 1000) * 3 / 100 for i, o in a + b)
    assert [e.seq for e in both.exchanges] == list(range(len(a) + len(b)))


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=60), st.text(max_size=60))
def test_tokenizer_concatenation_bound(a, b):
    assert count_tokens(a + b) <= count_tokens(a) + count_tokens(b) + 1
    assert count_tokens(a) == len(tokenize(a)) == _oracle_tokens(a)


def test_tokenizer_rules():
    assert tokenize("int counter_value = 42;") == ["int", "coun", "ter_", "valu", "e", "=", "42", ";"]


def test_prompt_sections_in_order():
    refs = retrieve(LOG, 1)
    b = build_prompt(Stage.REPAIR, PROG, LOG, refs)
    heads = [b.serialized.index(h) for h in ("## SYSTEM", "## GUIDANCE", "## EXAMPLES", "## ERROR LOG", "## PROGRAM")]
    assert heads == sorted(heads)
    assert refs[0][0].guidance in b.serialized
    assert b.serialized.count("## PROGRAM") == 1
    assert b.tokens == count_tokens(b.serialized)
    assert "single fenced code block" in PREAMBLES[Stage.REPAIR]
    assert build_prompt(Stage.REPAIR, PROG, LOG, refs).key == b.key


def test_no_rag_prompt_has_empty_guidance():
    b = build_prompt(Stage.REPAIR, PROG, LOG)
    assert "## GUIDANCE\n(none)" in b.serialized and b.references == ()


def test_budget_drops_lowest_reference_then_fails():
    refs = retrieve(LOG, 3)
    full = build_prompt(Stage.REPAIR, PROG, LOG, refs)
    one = build_prompt(Stage.REPAIR, PROG, LOG, refs[:1])
    b = build_prompt(Stage.REPAIR, PROG, LOG, refs, budget=one.tokens)
    assert [r.id for r, _ in b.references] == [refs[0][0].id]
    assert full.tokens > one.tokens
    with pytest.raises(PromptTooLarge):
        build_prompt(Stage.REPAIR, "int x;\n" * 8000, LOG)


def test_extract_program():
    assert extract_program("Here:\n```c\nint f(void) { return 1; }\n```\nDone.") == "int f(void) { return 1; }\n"
    two = "```c\nreturn 1;\n}\n```\nfull version:\n```cpp\nint g(void) { return 2; }\n```"
    assert "int g" in extract_program(two)
    with pytest.raises(ExtractError):
        extract_program("I could not repair this program.")
    with pytest.raises(ExtractError):
        extract_program("```c\nint f( {\n```")


def test_replay_round_trip_and_miss(tmp_path):
    path = tmp_path / "c.jsonl"
    b = build_prompt(Stage.REPAIR, PROG, LOG)
    rec = RecordBackend(ScriptedBackend([fenced("int f(int x) { return x != 0; }")]), path)
    led = CostLedger()
    ex = complete(b, rec, led)
    rep = ReplayBackend(path)
    again = complete(b, rep)
    assert (again.response, again.input_tokens, again.output_tokens) == (ex.response, ex.input_tokens, ex.output_tokens)
    assert len(path.read_text().splitlines()) == 1
    other = build_prompt(Stage.REPAIR, PROG.replace("x", "y"), LOG)
    with pytest.raises(UnrecordedPrompt, match=other.key):
        complete(other, rep, led)
    assert led.exchanges[-1].error and led.count() == 2


def test_oracle_matches_script_repair():
    b = build_prompt(Stage.REPAIR, PROG, LOG)
    ex = complete(b, OracleBackend())
    assert extract_program(ex.response) == script_pass(SourceUnit.from_bytes("x.c", PROG)).unit.text
    assert complete(build_prompt(Stage.REPAIR, PROG, LOG), OracleBackend("int g;\n")).response == fenced("int g;\n")
    assert complete(build_prompt(Stage.DETECT_EXTRA, PROG, LOG), OracleBackend()).response == "none"


def test_scripted_sequence_repeats_last():
    be = ScriptedBackend(["a", "b"])
    b = build_prompt(Stage.REPAIR, PROG, LOG)
    assert [be.complete(b).text for _ in range(3)] == ["a", "b", "b"]
    with pytest.raises(BackendError):
        ScriptedBackend([]).complete(b)


def _live(handler, **kw):
    return LiveBackend("http://llm.test/v1/chat/completions", "m", api_key="k",
                       client=httpx.Client(transport=httpx.MockTransport(handler)), sleep=lambda s: None, **kw)


def test_live_backend_wire_format_and_retry():
    calls = []

    def handler(request):
        calls.append(json.loads(request.content))
        if len(calls) < 3:
            return httpx.Response(503)
        assert request.headers["Authorization"] == "Bearer k"
        return httpx.Response(200, json={"choices": [{"message": {"content": "ok"}}],
                                         "usage": {"prompt_tokens": 5}})

    b = build_prompt(Stage.REPAIR, PROG, LOG)
    c = _live(handler).complete(b)
    assert c.text == "ok" and c.native_usage == {"prompt_tokens": 5}
    assert c.input_tokens == b.tokens
    assert calls[0]["messages"][1] == {"role": "user", "content": b.serialized}


def test_live_backend_failures():
    b = build_prompt(Stage.REPAIR, PROG, LOG)
    with pytest.raises(BackendError, match="after 3 attempts"):
        _live(lambda r: httpx.Response(500)).complete(b)
    with pytest.raises(BackendError, match="malformed"):
        _live(lambda r: httpx.Response(200, json={"nope": 1})).complete(b)
    with pytest.raises(BackendError, match="HTTP 401"):
        _live(lambda r: httpx.Response(401, text="denied")).complete(b)


def test_make_backend_modes(tmp_path):
    assert make_backend("oracle").id == "oracle"
    assert make_backend("replay", cassette=tmp_path / "x.jsonl").id == "replay"
    with pytest.raises(ValueError):
        make_backend("replay")
    with pytest.raises(ValueError):
        make_backend("psychic")
