from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from hlsrepair.cfront import (Edit, LexError, ParseFailure, RewriteConflict, SourceUnit, Stage, apply_edits,
                              ast as A, lex, parse_source, print_unit)
from hlsrepair.cfront.scope import resolve


def test_lex_simple_declaration():
    toks = lex("int x;").tokens
    assert [(t.kind, t.text) for t in toks] == [("keyword", "int"), ("identifier", "x"), ("punctuation", ";")]


def test_lex_empty():
    assert len(lex("").tokens) == 0


def test_unterminated_comment_span():
    with pytest.raises(LexError) as info:
        lex("/* open")
    # "/* open" is seven bytes
    assert (info.value.span.start, info.value.span.end) == (0, 7)


def test_parse_function_with_return():
    tu = parse_source("int f(){return 0;}")
    fns = tu.functions()
    assert list(fns) == ["f"]
    returns = [n for n in tu.walk() if isinstance(n, A.Return)]
    assert len(returns) == 1


def test_unclosed_block_fails():
    with pytest.raises(ParseFailure, match="unclosed block"):
        parse_source("int f(){")


def test_partial_parse_keeps_errors():
    u = SourceUnit.from_bytes("x.c", "int f(){")
    assert not u.ok and u.errors


def test_print_untouched_is_identical():
    assert print_unit(parse_source("int x;")) == b"int x;"


def test_bfs_fixture_keeps_139_lines(bfs):
    data = bfs.file.read_bytes()
    assert data.count(b"\n") == 139
    tu = parse_source(data)
    assert print_unit(tu) == data


def test_corpus_round_trip(corpus):
    for b in corpus:
        for path in (b.file, b.golden):
            data = path.read_bytes()
            tu = parse_source(data)
            assert print_unit(tu) == data
            assert parse_source(print_unit(tu)) == tu


def test_rewritten_declaration_only_changes_its_bytes():
    src = b"/* keep */\nint a = 1;\nint b = 2;\nint c = 3;\n"
    tu = parse_source(src)
    decl = tu.items[1]
    d = decl.declarators[0]
    new_decl = dataclasses.replace(decl, declarators=(dataclasses.replace(d, init=A.IntLit("7", 7), span=None),), span=None)
    tu2 = dataclasses.replace(tu, items=(tu.items[0], new_decl, tu.items[2]))
    out = print_unit(tu2)
    assert out == b"/* keep */\nint a = 1;\nint b = 7;\nint c = 3;\n"


def test_apply_edits_and_conflict():
    assert apply_edits(b"abcdef", [Edit(1, 3, "X"), Edit(4, 4, "Y")]) == b"aXdYef"
    with pytest.raises(RewriteConflict):
        apply_edits(b"abcdef", [Edit(1, 3, "X"), Edit(2, 4, "Y")])


def test_stage_cannot_move_back():
    u = SourceUnit.from_bytes("x.c", "int x;").rewrite("int y;", Stage.LLM_REPAIRED)
    assert u.generation == 1
    with pytest.raises(ValueError):
        u.rewrite("int z;", Stage.SCRIPT_REPAIRED)


def test_resolve_finds_locals_and_params():
    tu = parse_source("int g; int f(int p){ int q = p + g; return q; }")
    res = resolve(tu)
    names = {(s.name, s.kind) for s in res.variables}
    assert {("g", "global"), ("p", "param"), ("q", "local")} <= names


_names = st.sampled_from(["a", "b", "c", "x1", "val"])
_exprs = st.recursive(
    st.one_of(_names, st.integers(0, 999).map(str)),
    lambda inner: st.tuples(inner, st.sampled_from(["+", "-", "*", "<<", "&&", "=="]), inner)
    .map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
    max_leaves=8,
)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(_names, _exprs), min_size=1, max_size=5), st.sampled_from(["", "\n", "  // c\n"]))
def test_round_trip_generated_programs(stmts, trailer):
    body = "".join(f"    {n} = {e};\n" for n, e in stmts)
    src = f"int a, b, c, x1, val;\nvoid f(void) {{\n{body}}}\n{trailer}".encode()
    tu = parse_source(src)
    assert print_unit(tu) == src
