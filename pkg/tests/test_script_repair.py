from __future__ import annotations

from hypothesis import given, settings, strategies as st

from hlsrepair.cfront import SourceUnit, Stage
from hlsrepair.detect import ErrorClass, check
from hlsrepair.interp import ExecEnv, equivalent, run
from hlsrepair.script_repair import PASS_NAMES, script_pass

from conftest import unit

BOOL_SRC = "int f(int x){ bool b = 0; b += x; b += x - 1; return b; }"


def rows(**ranges):
    names = list(ranges)
    out = [{}]
    for n in names:
        out = [dict(r, **{n: v}) for r in out for v in ranges[n]]
    return [ExecEnv(args=r) for r in out]


def _classes(u):
    return {d.error_class for d in check(u).errors}


def test_boolean_compound_assignment():
    data = rows(x=range(-3, 4))
    out = script_pass(unit(BOOL_SRC), dataset=data, entry="f")
    assert ErrorClass.T5_BOOLEAN_OP not in _classes(out.unit)
    assert "int b" in out.unit.text and out.unit.stage is Stage.SCRIPT_REPAIRED
    assert equivalent(unit(BOOL_SRC), out.unit, "f", data)


@settings(max_examples=40, deadline=None)
@given(st.integers(-2**31, 2**31 - 1))
def test_boolean_rewrite_equivalent_on_random_inputs(x):
    out = script_pass(unit(BOOL_SRC))
    env = ExecEnv(args={"x": x})
    assert run(unit(BOOL_SRC), "f", env).return_value == run(out.unit, "f", env).return_value


def test_boolean_increment_and_decrement():
    src = "int f(int n){ bool b = 0; for (int i = 0; i < n; i++) b++; bool c = 1; c--; return b * 2 + c; }"
    data = rows(n=range(4))
    out = script_pass(unit(src), dataset=data, entry="f")
    assert not _classes(out.unit)
    assert equivalent(unit(src), out.unit, "f", data)


def test_clean_program_is_untouched():
    u = unit("int f(int n){ return n * 2; }")
    out = script_pass(u)
    assert out.applied == [] and not out.changed and out.unit.raw == u.raw


def test_mutual_recursion_is_deferred():
    u = unit("int g(int n); int f(int n){ return n > 0 ? g(n - 1) : 0; } int g(int n){ return f(n) + 1; }")
    out = script_pass(u)
    reasons = {r for _, r in out.skipped}
    assert "non-self recursion: deferred to LLM" in reasons
    assert not out.changed


def test_tail_recursion_becomes_loop():
    src = "int acc(int n, int a){ if (n <= 0) return a; return acc(n - 1, a + n); }"
    data = rows(n=range(0, 30), a=(0, 5))
    out = script_pass(unit(src), dataset=data, entry="acc")
    assert not _classes(out.unit)
    assert "while (1)" in out.unit.text
    assert equivalent(unit(src), out.unit, "acc", data)


def test_void_recursion_uses_explicit_stack():
    src = ("int seen[64]; int cnt;\n"
           "void walk(int i, int d){ if (i >= 15 || d > 6) return; seen[cnt] = i; cnt++;"
           " walk(2 * i + 1, d + 1); walk(2 * i + 2, d + 1); }\n"
           "int top(int s){ cnt = 0; walk(s, 0); int h = 0; for (int k = 0; k < cnt; k++) h = h * 3 + seen[k];"
           " return h + cnt; }\n")
    data = rows(s=range(0, 15))
    out = script_pass(unit(src), dataset=data, entry="top")
    assert not _classes(out.unit)
    assert "MAX_DEPTH" in out.unit.text
    assert equivalent(unit(src), out.unit, "top", data)


def test_non_tail_recursion_is_deferred():
    src = "int fact(int n){ if (n <= 1) return 1; return n * fact(n - 1); }"
    out = script_pass(unit(src))
    assert any("non-tail recursion" in r for _, r in out.skipped)


def test_constant_malloc_becomes_array():
    src = ("#include <stdlib.h>\nint f(int x){ int *p = (int *)malloc(4 * sizeof(int));"
           " for (int i = 0; i < 4; i++) p[i] = x + i; int s = p[0] + p[3]; free(p); return s; }")
    data = rows(x=range(-5, 5))
    out = script_pass(unit(src), dataset=data, entry="f")
    assert not _classes(out.unit)
    assert "p[4]" in out.unit.text and "malloc" not in out.unit.text.split("\n", 1)[1]
    assert equivalent(unit(src), out.unit, "f", data)


def test_variable_malloc_is_deferred():
    out = script_pass(unit("#include <stdlib.h>\nint f(int n){ int *p = (int *)malloc(n * sizeof(int));"
                           " p[0] = 1; int r = p[0]; free(p); return r; }"))
    assert any("compile-time constant" in r for _, r in out.skipped)


def test_pointer_parameter_becomes_array():
    src = "int sum(int *v, int n){ int s = 0; for (int i = 0; i < n; i++) s += *(v + i); return s; }\n" \
          "int top(int n){ int a[8] = {1, 2, 3, 4, 5, 6, 7, 8}; return sum(a, n); }"
    data = rows(n=range(9))
    out = script_pass(unit(src), dataset=data, entry="top")
    assert not _classes(out.unit)
    assert "int v[]" in out.unit.text and "v[i]" in out.unit.text
    assert equivalent(unit(src), out.unit, "top", data)


def test_double_pointer_is_deferred():
    out = script_pass(unit("int f(int **pp){ return **pp; }"))
    assert any(r.startswith("double pointer") for _, r in out.skipped)


def test_switch_gets_default():
    src = "int f(int s){ int r = 0; switch (s) { case 0: r = 5; break; case 1: r = 7; break; } return r; }"
    data = rows(s=range(-1, 4))
    out = script_pass(unit(src), dataset=data, entry="f")
    assert not _classes(out.unit) and "default:" in out.unit.text
    assert equivalent(unit(src), out.unit, "f", data)


def test_dynamic_exception_gets_guard():
    src = "int a[4]; int f(int i, int v){ a[i] = v; return a[0] + v; }"
    data = rows(i=range(0, 6), v=(1, 2))
    rep = check(unit(src), dataset=data, entry="f")
    assert ErrorClass.T8_EXCEPTION in rep.classes()
    out = script_pass(unit(src), rep, dataset=data, entry="f")
    assert ErrorClass.T8_EXCEPTION not in check(out.unit, dataset=data, entry="f").classes()
    assert equivalent(unit(src), out.unit, "f", data, where_a_ok=True)


def test_static_exception_is_deferred():
    out = script_pass(unit("int f(void){ int a[4]; a[4] = 1; return a[0]; }"))
    assert any("clamping would change semantics" in r for _, r in out.skipped)


def test_disabled_pass_is_skipped():
    out = script_pass(unit(BOOL_SRC), disabled=("fix_boolean",))
    assert not out.changed


def test_pass_names_in_order():
    assert PASS_NAMES == ("fix_boolean", "fix_dynamic", "fix_pointer", "fix_incomplete", "fix_recursion",
                          "fix_exception")


def test_outcome_serializes(bfs):
    out = script_pass(SourceUnit.from_file(bfs.file))
    js = out.to_json()
    assert js["applied"] and {a["pass_name"] for a in js["applied"]} == {"fix_pointer"}
    assert all(s["reason"].endswith("deferred to LLM") for s in js["skipped"])


def test_corpus_passes_are_equivalent_and_idempotent(corpus):
    for b in corpus:
        data = b.load_dataset()[:100]
        orig = SourceUnit.from_file(b.file)
        rep = check(orig, dataset=data, entry=b.entry)
        out = script_pass(orig, rep, dataset=data, entry=b.entry)
        assert len(out.report.errors) <= len(rep.errors), b.id
        if out.changed:
            assert equivalent(orig, out.unit, b.entry, data, where_a_ok=True), b.id
            again = script_pass(out.unit, dataset=data, entry=b.entry)
            assert again.applied == [], b.id
