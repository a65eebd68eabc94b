from __future__ import annotations

import random
from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from hlsrepair.cfront import SourceUnit
from hlsrepair.interp import (DIV_ZERO, ILLEGAL_SHIFT, OUT_OF_BOUNDS, CompileError, ExecEnv, ExecError,
                              equivalent, load_dataset, profile, run, save_dataset)

from conftest import unit


def test_run_simple_function():
    r = run(unit("int f(int n){return n+1;}"), "f", ExecEnv(args={"n": 41}))
    assert r.ok and r.return_value == 42


def test_out_of_bounds_traps():
    u = unit("int f(int i){ int a[10]; a[i] = 1; return a[0]; }")
    r = run(u, "f", ExecEnv(args={"i": 10}))
    assert r.status == "TRAP" and r.trap == OUT_OF_BOUNDS


def test_division_and_shift_traps():
    u = unit("int f(int d, int s){ return (100 / d) + (1 << s); }")
    assert run(u, "f", ExecEnv(args={"d": 0, "s": 1})).trap == DIV_ZERO
    assert run(u, "f", ExecEnv(args={"d": 1, "s": 32})).trap == ILLEGAL_SHIFT
    assert run(u, "f", ExecEnv(args={"d": 4, "s": 3})).return_value == 33


def test_unsigned_wraps():
    u = unit("unsigned int f(unsigned int x){ return x * 2u + 1u; }")
    assert run(u, "f", ExecEnv(args={"x": 2**31})).return_value == 1


def test_missing_entry_and_args():
    u = unit("int f(int n){return n;}")
    with pytest.raises(ExecError):
        run(u, "g", ExecEnv(args={"n": 1}))
    with pytest.raises(ExecError):
        run(u, "f", ExecEnv())


def _bst_breadth_first(keys):
    """Independent oracle: BST insertion (ties go right), then level order."""
    root = None
    nodes = {}
    for idx, k in enumerate(keys):
        nodes[idx] = [k, None, None]
        if root is None:
            root = idx
            continue
        cur = root
        while True:
            side = 1 if k < nodes[cur][0] else 2
            if nodes[cur][side] is None:
                nodes[cur][side] = idx
                break
            cur = nodes[cur][side]
    order, q = [], deque([root] if root is not None else [])
    while q:
        i = q.popleft()
        order.append(nodes[i][0])
        q.extend(c for c in nodes[i][1:] if c is not None)
    return order


def test_bfs_fixture_visits_in_breadth_first_order(bfs):
    rng = random.Random(7)
    keys = rng.sample(range(482), 15)
    env = ExecEnv(args={"keys": keys + [0], "n": 15}, arrays={"visit_order": [0] * 16})
    for path in (bfs.file, bfs.golden):
        r = run(SourceUnit.from_file(path), "bfs_top", env)
        assert r.ok
        assert r.outputs["visit_order"][:15] == _bst_breadth_first(keys)


def test_bfs_profile_reproduces_m_range(bfs, bfs_rows):
    assert len(bfs_rows) == 1200
    prof = profile(SourceUnit.from_file(bfs.file), "bfs_top", bfs_rows)
    m = prof.by_name("m", "BFS")
    assert (m.min, m.max) == (0, 481)


def test_profile_constant_and_loop_counter():
    u = unit("int f(void){ int k = 7; int s = 0; for (int i = 0; i < 10; i++) s += k; return s; }")
    prof = profile(u, "f", [ExecEnv()])
    assert (prof["k"].min, prof["k"].max) == (7, 7)
    i = prof["i"]
    # eleven assignments: 0..9 plus the value that fails the test
    assert (i.min, i.max, i.count) == (0, 10, 11)


def test_equivalence_reflexive_and_counterexample():
    a = unit("int f(int n){return n+1;}")
    b = unit("int f(int n){return n+2;}")
    rows = [ExecEnv(args={"n": i}) for i in range(5)]
    assert equivalent(a, a, "f", rows)
    v = equivalent(a, b, "f", rows)
    assert not v and v.index == 0


def test_equivalence_bfs_original_vs_stack_version(bfs):
    rng = random.Random(11)
    rows = [ExecEnv(args={"keys": [rng.randint(0, 481) for _ in range(16)], "n": rng.randint(1, 16)},
                    arrays={"visit_order": [0] * 16}) for _ in range(20)]
    assert equivalent(SourceUnit.from_file(bfs.file), SourceUnit.from_file(bfs.golden), "bfs_top", rows)


def test_equivalence_can_skip_reference_traps():
    a = unit("int f(int d){ return 10 / d; }")
    b = unit("int f(int d){ return d != 0 ? 10 / d : 0; }")
    rows = [ExecEnv(args={"d": d}) for d in (0, 1, 2)]
    assert not equivalent(a, b, "f", rows)
    assert equivalent(a, b, "f", rows, where_a_ok=True).rows == 2


def test_malloc_and_free_run():
    u = unit("#include <stdlib.h>\nint f(int n){ int *p = (int*)malloc(4 * sizeof(int)); p[0] = n; p[3] = 2;"
             " int r = p[0] + p[3]; free(p); return r; }")
    assert run(u, "f", ExecEnv(args={"n": 5})).return_value == 7


def test_function_pointer_call():
    u = unit("int inc(int x){return x+1;} int f(int n){ int (*fp)(int) = inc; return fp(n); }")
    assert run(u, "f", ExecEnv(args={"n": 1})).return_value == 2


def test_unparsable_unit_does_not_compile():
    with pytest.raises(CompileError):
        run(unit("int f( {"), "f", ExecEnv())


def test_dataset_round_trip(tmp_path):
    rows = [ExecEnv(args={"n": i}, arrays={"g": [i, i]}) for i in range(3)]
    save_dataset(tmp_path / "d.jsonl", rows)
    back = load_dataset(tmp_path / "d.jsonl")
    assert [r.to_json() for r in back] == [r.to_json() for r in rows]


@settings(max_examples=50, deadline=None)
@given(st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_arithmetic_matches_c_semantics(a, b):
    u = unit("int f(int a, int b){ return a * 3 - b / 7 + (a % 5); }")
    r = run(u, "f", ExecEnv(args={"a": a, "b": b}))
    # C division and remainder truncate toward zero
    trunc = lambda x, y: int(x / y)
    assert r.return_value == a * 3 - trunc(b, 7) + (a - 5 * trunc(a, 5))
