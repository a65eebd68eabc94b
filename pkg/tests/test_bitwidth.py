from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from hlsrepair.bitwidth import (AC_INCLUDE, ApplyError, BitWidthOptimizer, BitWidthPlan, DomainError, Policy,
                                apply, apply_with_report, bits_required, emit_optimizer_program, parse_report,
                                plan)
from hlsrepair.cfront import SourceUnit
from hlsrepair.detect import check
from hlsrepair.interp import ExecEnv, equivalent, profile, run

from conftest import unit


def brute_bits(lo, hi, signed):
    """Oracle: smallest W in 1..64 whose range holds [lo, hi]."""
    for w in range(1, 65):
        rlo, rhi = (-(1 << (w - 1)), (1 << (w - 1)) - 1) if signed else (0, (1 << w) - 1)
        if rlo <= lo and hi <= rhi:
            return w
    raise AssertionError("no width up to 64")


def test_bits_required_examples():
    assert bits_required(0, 481, False) == 9
    assert bits_required(0, 0, False) == 1
    assert bits_required(-128, 127, True) == 8
    assert bits_required(-129, 127, True) == 9


def test_unsigned_negative_is_rejected():
    with pytest.raises(DomainError):
        bits_required(-1, 3, False)


@settings(max_examples=300, deadline=None)
@given(st.integers(-2**40, 2**40), st.integers(0, 2**40), st.booleans())
def test_bits_required_matches_brute_force(lo, span, signed):
    if not signed:
        lo = abs(lo)
    hi = lo + span
    assert bits_required(lo, hi, signed) == brute_bits(lo, hi, signed)


def _bfs_plan(bfs, rows, policy=Policy.NONE):
    u = SourceUnit.from_file(bfs.file)
    return u, plan(profile(u, "bfs_top", rows), u, policy)


def test_plan_m_is_nine_bits(bfs, bfs_rows):
    _, p = _bfs_plan(bfs, bfs_rows)
    m = p.by_name("m", "BFS")
    assert (m.width, m.signed, m.min, m.max) == (9, False, 0, 481)


def test_guard_bit_adds_one(bfs, bfs_rows):
    _, p = _bfs_plan(bfs, bfs_rows[:50], Policy.GUARD_BIT)
    assert p.by_name("m", "BFS").width == 10


def test_signed_small_range():
    u = unit("int f(int x){ int k = x; return k * 2; }")
    p = plan(profile(u, "f", [ExecEnv(args={"x": v}) for v in (-3, 0, 3)]), u)
    k = p.by_name("k")
    assert (k.width, k.signed) == (3, True) == (brute_bits(-3, 3, True), True)


def test_subtraction_keeps_sign():
    u = unit("int f(int x){ unsigned int d = 0; int r = x; r = r - 1; d = x; return r + d; }")
    p = plan(profile(u, "f", [ExecEnv(args={"x": v}) for v in (1, 9)]), u)
    assert p.by_name("r").signed
    assert not p.by_name("d").signed


def test_apply_rewrites_bfs_declaration(bfs, bfs_rows):
    u, p = _bfs_plan(bfs, bfs_rows)
    out = apply_with_report(u, p, include_header=True)
    assert "        ac_int<9, false> m = node->key;" in out.unit.text.splitlines()
    assert out.unit.text.startswith("#include <stdlib.h>\n" + AC_INCLUDE)


def test_apply_keeps_equivalence_on_all_rows(bfs, bfs_rows):
    g = SourceUnit.from_file(bfs.golden)
    p = plan(profile(g, "bfs_top", bfs_rows), g)
    out = apply(g, p, include_header=True)
    assert equivalent(g, out, "bfs_top", bfs_rows)
    assert check(out).passed


def test_empty_plan_is_identity(bfs):
    u = SourceUnit.from_file(bfs.golden)
    assert apply(u, BitWidthPlan()).raw == u.raw


def test_address_taken_variable_is_skipped():
    u = unit("void g(int *p){ *p = 1; } int f(int x){ int k = x; g(&k); int j = x; return k + j; }")
    p = plan(profile(u, "f", [ExecEnv(args={"x": 3})]), u)
    rep = apply_with_report(u, p)
    assert any(e.name == "k" for e, _ in rep.skipped)
    with pytest.raises(ApplyError):
        apply(u, p)


def test_mixed_declaration_is_split():
    u = unit("int f(int x){ int a = x, b = x * 1000; return a + b; }")
    rows = [ExecEnv(args={"x": v}) for v in (0, 5)]
    out = apply(u, plan(profile(u, "f", rows), u))
    assert "ac_int<3, false> a = x;" in out.text and "ac_int<13, false> b = x * 1000;" in out.text
    assert equivalent(u, out, "f", rows)


def test_optimizer_program_prints_bfs_range(bfs, bfs_rows):
    u = SourceUnit.from_file(bfs.golden)
    prog = emit_optimizer_program(u, bfs_rows[:60], "bfs_top")
    r = run(SourceUnit.from_bytes("opt.c", prog), "main", ExecEnv())
    ranges = parse_report("".join(r.prints))
    assert ranges["BFS.m"] == (0, 481)
    prof = profile(u, "bfs_top", bfs_rows[:60])
    for s in prof:
        label = s.name if s.name in ranges else f"{s.function}.{s.name}"
        assert ranges[label] == (s.min, s.max)


def test_optimizer_program_empty_dataset():
    u = unit("int f(int x){ int k = x; return k; }")
    prog = emit_optimizer_program(u, [], "f")
    r = run(SourceUnit.from_bytes("opt.c", prog), "main", ExecEnv())
    assert r.ok and parse_report("".join(r.prints)) == {}


def test_estimator_api(bfs, bfs_rows):
    est = BitWidthOptimizer(entry="bfs_top")
    assert est.get_params() == {"entry": "bfs_top", "policy": "none", "include_header": False}
    g = SourceUnit.from_file(bfs.golden)
    out = est.fit_transform(g, bfs_rows[:100])
    assert est.plan_.by_name("m", "BFS").width == 9
    assert "ac_int<9, false> m" in out.text
    with pytest.raises(ValueError):
        est.set_params(bogus=1)
    with pytest.raises(RuntimeError):
        BitWidthOptimizer().transform(g)


def test_corpus_goldens_survive_narrowing(corpus):
    for b in corpus:
        data = b.load_dataset()[:100]
        g = SourceUnit.from_file(b.golden)
        p = plan(profile(g, b.entry, data), g)
        out = apply_with_report(g, p, include_header=True).unit
        assert equivalent(g, out, b.entry, data, where_a_ok=True), b.id
