from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from hlsrepair.cfront import ast as A
from hlsrepair.cfront.scope import resolve
from hlsrepair.detect import check
from hlsrepair.interp import ExecEnv, equivalent
from hlsrepair.ppa import (BottleneckEntry, BottleneckReport, Dialect, Metric, OptimizeError, estimate, optimize,
                           trip_count)
from hlsrepair.llm import OracleBackend, ScriptedBackend, fenced

from conftest import unit

LOOP4 = """int acc(int x) {
    int s = 0;
    for (int i = 0; i < 4; i++) {
        s += x * i;
    }
    return s;
}
"""
ROWS = [ExecEnv(args={"x": v}) for v in (-2, 0, 7)]


def _latency_report(line=3):
    return BottleneckReport((BottleneckEntry(f"line:{line}", Metric.LATENCY, 0.9),))


def test_unroll_trip_four_loop():
    u = unit(LOOP4)
    res = optimize(u, _latency_report(), entry="acc", dataset=ROWS)
    assert res.unit.text.splitlines()[2] == "    #pragma hls_unroll 4"
    assert [(e.strategy, e.factor, e.line) for e in res.edits] == [("loop-unroll", 4, 3)]
    assert res.before.loops[3] == 8 and res.after.loops[4] == 2
    assert res.before.latency["acc"] > res.after.latency["acc"]
    assert check(res.unit).passed and equivalent(u, res.unit, "acc", ROWS)


def test_unroll_factor_capped():
    u = unit(LOOP4.replace("i < 4", "i < 100"))
    res = optimize(u, _latency_report())
    assert res.edits[0].factor == 8


def test_dynamic_trip_count_is_skipped():
    u = unit(LOOP4.replace("i < 4", "i < x"))
    res = optimize(u, _latency_report())
    assert not res.edits and "not static" in res.skipped[0][1]


def test_area_pragma_above_function(bfs):
    from hlsrepair.cfront import SourceUnit
    g = SourceUnit.from_file(bfs.golden)
    res = optimize(g, BottleneckReport((BottleneckEntry("BFS", Metric.AREA),)))
    lines = res.unit.text.splitlines()
    i = next(n for n, ln in enumerate(lines) if ln.startswith("void BFS("))
    assert lines[i - 1] == "#pragma design_goal area"
    assert res.after.area["BFS"] < res.before.area["BFS"]


def test_memory_entry_annotates_array():
    u = unit("int buf[8];\nint f(int x) { buf[x & 7] = x; return buf[0]; }\n")
    res = optimize(u, BottleneckReport((BottleneckEntry("buf", Metric.MEMORY_BANDWIDTH),)))
    assert res.unit.text.startswith('#pragma hls_resource buf variables="buf" map_to_module="ram_dual_port"\nint buf[8];')


def test_empty_report_is_identity():
    u = unit(LOOP4)
    res = optimize(u, BottleneckReport())
    assert res.unit is u and res.edits == []


def test_idempotent():
    u = unit(LOOP4)
    once = optimize(u, _latency_report()).unit
    twice = optimize(once, _latency_report(4))
    assert twice.unit.raw == once.raw and "already present" in twice.skipped[0][1]


def test_unknown_target_and_dialect():
    u = unit(LOOP4)
    res = optimize(u, BottleneckReport((BottleneckEntry("line:99", Metric.LATENCY),)))
    assert "not found" in res.skipped[0][1]
    res = optimize(u, _latency_report(), dialect=Dialect(unroll="unroll"))
    assert "#pragma unroll 4" in res.unit.text


def test_llm_mode_checks_result():
    u = unit(LOOP4)
    r = _latency_report()
    good = optimize(u, r, "llm", entry="acc", dataset=ROWS, backend=OracleBackend())
    assert "#pragma hls_unroll 4" in good.unit.text and good.edits[0].strategy == "llm"
    bad = fenced(LOOP4.replace("x * i", "x + i"))
    with pytest.raises(OptimizeError, match="not equivalent"):
        optimize(u, r, "llm", entry="acc", dataset=ROWS, backend=ScriptedBackend([bad]), strict=True)
    soft = optimize(u, r, "llm", entry="acc", dataset=ROWS, backend=ScriptedBackend([bad]))
    assert soft.unit is u and soft.skipped


def test_report_formats(tmp_path):
    p = tmp_path / "r.csv"
    p.write_text("name,metric,value\nBFS,area,0.8\nline:3,latency,2\n")
    rep = BottleneckReport.load(p)
    assert [(e.target, e.metric, e.magnitude) for e in rep] == [("BFS", Metric.AREA, 0.8), ("line:3", Metric.LATENCY, 1.0)]
    assert BottleneckReport.from_json(rep.to_json()) == rep
    with pytest.raises(ValueError):
        BottleneckEntry("f", Metric.POWER, 1.5)


def _brute_trips(a, b, c, op):
    n, i = 0, a
    cmp = {"<": lambda x: x < b, "<=": lambda x: x <= b, ">": lambda x: x > b, ">=": lambda x: x >= b}[op]
    while cmp(i):
        n += 1
        i += c
    return n


@settings(max_examples=150, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 5), st.sampled_from(["<", "<=", ">", ">="]))
def test_trip_count_matches_simulation(a, b, c, op):
    step = f"i += {c}" if op in ("<", "<=") else f"i -= {c}"
    delta = c if op in ("<", "<=") else -c
    u = unit(f"int f(void) {{ int s = 0; for (int i = {a}; i {op} {b}; {step}) s++; return s; }}")
    loop = next(n for n in u.ast.walk() if isinstance(n, A.For))
    assert trip_count(loop, resolve(u.ast)) == _brute_trips(a, b, delta, op)


def test_estimate_is_labelled():
    assert estimate(unit(LOOP4)).to_json()["label"] == "PROXY"
