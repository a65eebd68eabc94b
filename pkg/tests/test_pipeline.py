from __future__ import annotations

import json
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hlsrepair import corpus as bundled
from hlsrepair.cfront import SourceUnit
from hlsrepair.detect import ErrorClass, check
from hlsrepair.llm import BackendError, Backend, ScriptedBackend, fenced
from hlsrepair.pipeline import (ARMS, Config, ManifestError, compare_cost, load_manifest, run_corpus,
                                run_instance)
from hlsrepair.pipeline.config import ConfigError
from hlsrepair.pipeline.metrics import format_rate, pass_rate

from conftest import unit

CLEAN = "int f(int x) { int s = 0; for (int i = 0; i < 4; i++) s += x; return s; }\n"
# one script-fixable boolean error next to a recursion no script can remove
MIXED = """int depth(int n) {
    bool odd = false;
    odd += n & 1;
    if (n <= 0)
        return 0;
    return 1 + depth(n - 1) + odd;
}
"""


def _by_id(corpus, prefix):
    return next(b for b in corpus if b.id.startswith(prefix))


def test_pass_rate_examples():
    assert format_rate(pass_rate(11, 15)) == "73.33"
    assert format_rate(pass_rate(15, 15)) == "100.00"
    assert format_rate(pass_rate(0, 15)) == "0.00"
    with pytest.raises(ValueError):
        pass_rate(16, 15)


@given(st.integers(1, 500).flatmap(lambda n: st.tuples(st.integers(0, n), st.just(n))))
def test_pass_rate_matches_decimal_oracle(mn):
    m, n = mn
    want = (Decimal(100 * m) / Decimal(n)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    assert format_rate(pass_rate(m, n)) == str(want)


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError, match="unknown config key"):
        Config.from_mapping({"qmax": 3})
    with pytest.raises(ConfigError, match="cassette"):
        Config(mode="replay")
    with pytest.raises(ConfigError, match="unknown pass"):
        Config(skip_passes=("fix_everything",))
    p = tmp_path / "c.toml"
    p.write_text('[hlsrepair]\nq_max = 3\nprice_in = "1/50"\nskip_passes = ["fix_boolean"]\nrag = false\n')
    c = Config.load(p)
    assert (c.q_max, c.price_in, c.skip_passes, c.rag) == (3, Fraction(1, 50), ("fix_boolean",), False)
    assert Config.from_mapping(c.to_json()) == c


def test_clean_input_needs_no_queries():
    s = run_instance(unit(CLEAN), Config(detect_extra=False))
    assert s.compile_pass and s.sim_pass and s.repair_queries == 0 and s.ledger.count() == 0


def test_bfs_oracle_session(bfs, bfs_rows):
    s = run_instance(bfs.file, Config(), entry=bfs.entry, dataset=bfs_rows[:200], golden=bfs.golden_text(),
                     benchmark=bfs.id)
    assert s.compile_pass and s.sim_pass and 1 <= s.repair_queries <= 5
    left = {d.error_class for d in check(s.final).diagnostics}
    assert not left & {ErrorClass.T1_POINTER, ErrorClass.T2_DYNAMIC_ARRAY, ErrorClass.T3_RECURSION}
    assert "ac_int<9, false> m" in s.final.text
    stages = [t.stage for t in s.trace]
    assert stages[0] == "preprocess" and stages[-1] == "llm_repair"
    assert s.final.stage.name == "COMPILED_OK"
    assert s.sim_pass <= s.compile_pass


def test_broken_backend_exhausts_budget(bfs):
    broken = ScriptedBackend([fenced(bfs.file.read_text())])
    s = run_instance(bfs.file, Config(scripts=False, rag=False), entry=bfs.entry, backend=broken)
    assert not s.compile_pass and not s.sim_pass
    assert s.repair_queries == 5 == s.ledger.count("REPAIR")


def test_backend_errors_consume_queries(bfs):
    class Down(Backend):
        id = "down"

        def complete(self, bundle):
            raise BackendError("connection refused")

    s = run_instance(bfs.file, Config(q_max=3, detect_extra=False), backend=Down())
    assert s.repair_queries == 3 and len(s.backend_errors) == 3 and not s.compile_pass


def test_prose_answer_is_fed_back(bfs):
    seen = []

    def answer(bundle, i):
        seen.append(bundle.error_log)
        return "Sorry, I cannot help." if i == 0 else fenced(bfs.golden_text())

    s = run_instance(bfs.file, Config(detect_extra=False), backend=ScriptedBackend(answer))
    assert s.compile_pass and s.repair_queries == 2
    assert "previous answer rejected" in seen[1]


def test_detect_extra_findings_are_advisory(bfs):
    def answer(bundle, i):
        if bundle.stage.value == "DETECT_EXTRA":
            return "ERROR [POINTER]: suspicious alias at line 3"
        return fenced(bfs.golden_text())

    s = run_instance(bfs.file, Config(), backend=ScriptedBackend(answer))
    assert [f.severity.value for f in s.findings] == ["ADVISORY"]
    assert s.compile_pass and s.ledger.count("DETECT_EXTRA") == 1 and s.repair_queries == 1


def test_scripts_shrink_first_prompt():
    # Measured on the whole prompt: the boolean rewrite itself adds tokens to
    # the program, but the error it removes no longer appears in the log.
    fix = "int depth(int n) {\n    int d = 0;\n    for (int k = n; k > 0; k--)\n        d += 1 + ((k & 1) != 0);\n    return d;\n}\n"
    first = {}
    for scripts in (True, False):
        s = run_instance(unit(MIXED), Config(scripts=scripts, rag=False, detect_extra=False),
                         backend=ScriptedBackend([fenced(fix)]))
        assert s.compile_pass
        first[scripts] = s.ledger.exchanges[0].input_tokens
        if scripts:
            assert s.script_resolved == 1
    assert first[True] < first[False]


def test_manifest_errors(tmp_path, corpus):
    b = corpus[0]
    item = {"id": "a", "file": str(b.file), "entry": b.entry, "dataset": str(b.dataset), "expected_classes": ["T1"]}
    p = tmp_path / "m.json"
    p.write_text(json.dumps([item, item]))
    with pytest.raises(ManifestError, match="duplicate"):
        load_manifest(p)
    p.write_text(json.dumps([dict(item, expected_classes=["T9"])]))
    with pytest.raises(ManifestError):
        load_manifest(p)
    p.write_text(json.dumps([dict(item, file="missing.c")]))
    with pytest.raises(ManifestError):
        load_manifest(p)
    with pytest.raises(ManifestError):
        run_corpus(p, Config(), 1)
    p.write_text(json.dumps({"benchmarks": [item]}))
    assert [x.id for x in load_manifest(p)] == ["a"]


def test_bundled_manifest(corpus):
    assert len(corpus) == 24
    assert [b.error_class for b in corpus] == [f"T{k}" for k in range(1, 9) for _ in range(3)]


def test_compare_cost_edge_cases(corpus):
    t5 = [_by_id(corpus, "13")]
    same = Config(scripts=False, rag=False)
    cmp = compare_cost(same, same, t5)
    assert cmp.ratio() == 1 and cmp.ratio("T5") == 1
    with pytest.raises(ValueError, match="empty"):
        compare_cost(same, same, [])


def test_replay_arms_and_parallel_runs_agree(corpus):
    subset = [b for b in corpus if b.error_class in ("T3", "T5")]
    cfg = Config(mode="replay", cassette=str(bundled.cassette("full")), **ARMS["full"])
    serial = run_corpus(subset, cfg, 2)
    par = run_corpus(subset, cfg.replace(parallelism=4), 2)
    assert serial.report.to_json() == par.report.to_json()
    assert serial.max_queries <= 5
    assert format_rate(serial.report.mean_sim) == "100.00"


def test_session_json_is_stable(bfs, bfs_rows):
    cfg = Config(mode="replay", cassette=str(bundled.cassette("full")))
    a = run_instance(bfs.file, cfg, entry=bfs.entry, dataset=bfs_rows, report=None, benchmark=bfs.id)
    b = run_instance(bfs.file, cfg, entry=bfs.entry, dataset=bfs_rows, report=None, benchmark=bfs.id)
    assert json.dumps(a.to_json(False), sort_keys=True) == json.dumps(b.to_json(False), sort_keys=True)
