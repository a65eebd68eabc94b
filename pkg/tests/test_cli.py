from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from hlsrepair.cli import EXIT_BACKEND, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def work(tmp_path, bfs):
    for p in (bfs.file, bfs.golden, bfs.dataset, bfs.report):
        shutil.copy(p, tmp_path / p.name)
    return tmp_path


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_check_exit_codes(work, capsys):
    assert main(["check", str(work / "golden.c"), "--json"]) == EXIT_OK
    assert _json(capsys)["verdict"] == "PASS"
    assert main(["check", str(work / "orig.c"), "--json"]) == EXIT_FAIL
    assert "T3" in {d["class"] for d in _json(capsys)["diagnostics"]}
    assert main(["check", str(work / "nope.c")]) == EXIT_USAGE
    assert "nope.c" in capsys.readouterr().err


def test_check_text_output(work, capsys):
    main(["check", str(work / "orig.c")])
    out = capsys.readouterr().out.splitlines()
    assert out[-1] == "FAIL" and any(ln.startswith("ERROR [RECURSION]") for ln in out)


def test_repair_oracle_writes_checkable_file(work, capsys):
    rc = main(["repair", str(work / "orig.c"), "--golden", str(work / "golden.c"), "--dataset",
               str(work / "data.jsonl"), "--entry", "bfs_top", "--report", str(work / "report.json"), "--json"])
    payload = _json(capsys)
    assert rc == EXIT_OK and payload["sim_pass"]
    out = work / "orig.hlsc.c"
    assert payload["output"] == str(out)
    assert "ac_int<9, false> m" in out.read_text()
    assert main(["check", str(out)]) == EXIT_OK


def test_repair_baseline_arm_and_replay_miss(work, capsys):
    cas = work / "empty.jsonl"
    cas.write_text("")
    rc = main(["repair", str(work / "orig.c"), "--mode", "replay", "--cassette", str(cas),
               "--no-rag", "--no-scripts"])
    assert rc == EXIT_BACKEND
    assert "UnrecordedPrompt" in capsys.readouterr().err


def test_bitwidth_plan(work, capsys):
    rc = main(["bitwidth", str(work / "orig.c"), "--dataset", str(work / "data.jsonl"), "--entry", "bfs_top",
               "--json"])
    plan = _json(capsys)["plan"]
    m = next(e for e in plan if e["name"] == "m" and e["function"] == "BFS")
    assert rc == EXIT_OK and (m["width"], m["signed"], m["min"], m["max"]) == (9, False, 0, 481)
    assert main(["bitwidth", str(work / "orig.c"), "--dataset", str(work / "data.jsonl")]) == EXIT_USAGE


def test_optimize_empty_report_keeps_file(work, capsys):
    rep = work / "empty.json"
    rep.write_text('{"entries": []}')
    assert main(["optimize", str(work / "golden.c"), str(rep)]) == EXIT_OK
    assert (work / "golden.opt.c").read_bytes() == (work / "golden.c").read_bytes()
    assert "no pragmas" in capsys.readouterr().out


def test_config_file_and_bad_key(work, capsys):
    cfg = work / "c.toml"
    cfg.write_text("q_max = 2\nbogus = 1\n")
    assert main(["check", str(work / "golden.c"), "--config", str(cfg)]) == EXIT_USAGE
    assert "bogus" in capsys.readouterr().err


def test_corpus_oracle(tmp_path, corpus, capsys):
    items = []
    for b in corpus[6:9]:
        items.append({"id": b.id, "name": b.name, "file": str(b.file), "golden": str(b.golden),
                      "entry": b.entry, "dataset": str(b.dataset), "expected_classes": list(b.expected_classes)})
    m = tmp_path / "m.json"
    m.write_text(json.dumps(items))
    assert main(["corpus", str(m), "-n", "1", "--json"]) == EXIT_OK
    rep = _json(capsys)["custom"]
    assert (rep["mean_compile_rate"], rep["mean_sim_rate"]) == ("100.00", "100.00")


def test_module_entry_point(work):
    r = subprocess.run([sys.executable, "-m", "hlsrepair", "check", str(work / "golden.c")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip().endswith("PASS")
