from __future__ import annotations

import itertools

import networkx as nx
from hypothesis import given, settings, strategies as st

from hlsrepair.cfront import SourceUnit
from hlsrepair.detect import ErrorClass, Severity, check
from hlsrepair.interp import ExecEnv, profile

from conftest import unit


def classes(text, **kw):
    return {d.error_class.value for d in check(unit(text), **kw).errors}


def test_bfs_pointer_and_malloc_detected(bfs):
    rep = check(SourceUnit.from_file(bfs.file))
    subjects = {(d.error_class.value, d.subject) for d in rep.errors}
    assert ("T1", "left") in subjects and ("T1", "right") in subjects
    assert ("T2", "malloc") in subjects
    assert ("T3", "BFS") in subjects


def test_bfs_golden_passes(bfs):
    rep = check(SourceUnit.from_file(bfs.golden))
    assert rep.passed and rep.errors == []


def test_array_bound_pointer_is_allowed():
    assert classes("int a[8]; void f(int i){ int *p = a; p[i] = 0; }") == set()


def test_double_pointer_and_rebinding_flagged():
    assert "T1" in classes("int f(int **pp){ return **pp; }")
    assert "T1" in classes("int a[8]; void f(void){ int *p = a; p = p + 1; p[0] = 1; }")


def test_dynamic_memory():
    assert classes("#include <stdlib.h>\nvoid f(int *p){ free(p); }") >= {"T2"}
    assert classes("void f(int n){ int a[n]; a[0] = 1; }") == {"T2"}
    assert classes("void f(void){ int a[10]; a[0] = 1; }") == set()


def test_recursion_self_mutual_and_acyclic():
    assert classes("int f(int n){ return n ? f(n-1) : 0; }") == {"T3"}
    rep = check(unit("int g(int n); int f(int n){ return n ? g(n-1) : 0; } int g(int n){ return f(n); }"))
    assert {d.subject for d in rep.errors if d.error_class is ErrorClass.T3_RECURSION} == {"f", "g"}
    assert classes("int h(int n){return n;} int g(int n){return h(n);} int f(int n){return g(n);}") == set()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=8))
def test_recursion_matches_cycle_oracle(edges):
    names = [f"f{i}" for i in range(5)]
    calls = {i: sorted({b for a, b in edges if a == i}) for i in range(5)}
    protos = "".join(f"int {n}(int x);\n" for n in names)
    bodies = "".join(
        f"int {names[i]}(int x) {{ int s = 0; {''.join(f's += {names[j]}(x - 1); ' for j in calls[i])}return s; }}\n"
        for i in range(5))
    rep = check(unit(protos + bodies))
    flagged = {d.subject for d in rep.errors if d.error_class is ErrorClass.T3_RECURSION}
    g = nx.DiGraph()
    g.add_nodes_from(range(5))
    g.add_edges_from(edges)
    expected = {names[n] for comp in nx.strongly_connected_components(g) for n in comp
                if len(comp) > 1 or g.has_edge(n, n)}
    assert flagged == expected


def test_bitwidth_advisory_from_profile():
    u = unit("int f(int x){ unsigned int m = x; int z = 0; return m + z; }")
    prof = profile(u, "f", [ExecEnv(args={"x": v}) for v in (0, 481)])
    rep = check(u, profile=prof)
    adv = {d.subject: d for d in rep.diagnostics if d.error_class is ErrorClass.T4_BIT_WIDTH}
    assert adv["m"].severity is Severity.ADVISORY and "needs 9 bits" in adv["m"].message
    assert "needs 1 bit" in adv["z"].message
    assert rep.passed


def test_bitwidth_full_range_is_silent():
    u = unit("unsigned int f(unsigned int x){ unsigned int m = x; return m; }")
    prof = profile(u, "f", [ExecEnv(args={"x": v}) for v in (0, 2**32 - 1)])
    assert not [d for d in check(u, profile=prof).diagnostics if d.subject == "m"]


def test_boolean_operations():
    assert classes("void f(int x){ bool b = 0; b += 1; }") == {"T5"}
    assert classes("void f(void){ bool b = 0; b++; }") == {"T5"}
    assert classes("void f(void){ int c = 0; c++; }") == set()


def test_incomplete_switch():
    full = "void f(ac_int<2, false> s){ int r = 0; switch (s) { case 0: r = 1; break; case 1: r = 2; break;" \
           " case 2: r = 3; break; case 3: r = 4; break; } }"
    assert classes(full) == set()
    part = "void f(ac_int<2, false> s){ int r = 0; switch (s) { case 0: r = 1; break; case 1: r = 2; break; } }"
    assert classes(part) == {"T6"}
    assert classes("void f(int s){ int r = 0; switch (s) { case 0: r = 1; break; default: break; } }") == set()


def test_unsupported_constructs():
    assert "T7" in classes("struct A { virtual int f(); };")
    assert classes("int g(int x){return x;} int f(void){ int (*fp)(int) = g; return fp(1); }") == {"T7"}
    assert classes("struct P { int x; int y; }; int f(void){ struct P p; p.x = 1; return p.x; }") == set()


def test_exception_static_and_dynamic():
    assert classes("int f(void){ int a[10]; a[10] = 1; return a[0]; }") == {"T8"}
    assert classes("int f(int x){ return x << 32; }") == {"T8"}
    u = "int f(int i){ int a[4] = {1, 2, 3, 4}; return a[i]; }"
    ok = [ExecEnv(args={"i": i}) for i in range(4)]
    assert classes(u, dataset=ok, entry="f") == set()
    assert classes(u, dataset=ok + [ExecEnv(args={"i": 4})], entry="f") == {"T8"}


def test_syntax_error_reported():
    rep = check(unit("int f( {"))
    assert not rep.passed and rep.errors[0].error_class is ErrorClass.SYNTAX


def test_log_format():
    rep = check(unit("int f(int n){ return n ? f(n-1) : 0; }"))
    assert rep.log.startswith("ERROR [RECURSION]: function 'f' calls itself at line 1")


def test_corpus_seeded_classes_and_clean_goldens(corpus):
    for b in corpus:
        rows = b.load_dataset()[:100]
        orig = SourceUnit.from_file(b.file)
        prof = profile(orig, b.entry, rows) if "T4" in b.expected_classes else None
        found = {d.error_class.value for d in check(orig, profile=prof, dataset=rows, entry=b.entry).diagnostics}
        assert set(b.expected_classes) <= found, b.id
        golden = check(SourceUnit.from_file(b.golden), dataset=rows, entry=b.entry)
        assert golden.errors == [], b.id


def test_error_class_parse_aliases():
    for c in ErrorClass:
        assert ErrorClass.parse(c.value) is c
        assert ErrorClass.parse(c.keyword) is c


def test_check_is_deterministic(bfs):
    u = SourceUnit.from_file(bfs.file)
    assert check(u).log == check(u).log
    assert list(itertools.islice(check(u).diagnostics, 3)) == list(itertools.islice(check(u).diagnostics, 3))
