"""Regenerate the bundled corpus datasets, manifest, reports and cassettes.

Fixture sources (orig.c / golden.c) are hand-written; everything else under
src/hlsrepair/corpus is produced here from a fixed seed:

    python3 tools/build_corpus.py            # datasets, manifest, reports
    python3 tools/build_corpus.py --cassettes  # also re-record replay cassettes
"""
from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

from hlsrepair.interp import ExecEnv, save_dataset

ROOT = Path(__file__).resolve().parents[1] / "src" / "hlsrepair" / "corpus"
SEED = 20240611
ROWS = 150


def _ints(rng, n, lo, hi):
    return [rng.randint(lo, hi) for _ in range(n)]


def bfs_rows(rng: random.Random) -> list[dict]:
    """1200 rows of keys drawn around 240, clipped to [0, 481]; both ends occur."""
    rows = []
    for i in range(1200):
        keys = [min(481, max(0, round(rng.gauss(240, 80)))) for _ in range(16)]
        n = rng.randint(1, 16)
        if i == 0:
            keys[0] = 0
        if i == 1:
            keys[0] = 481
        rows.append({"args": {"keys": keys, "n": n}})
    return rows


# id, name, class(es), entry, row generator
BENCHMARKS = [
    ("01_double_pointer", "Double Pointer", ["T1"], "double_pointer",
     lambda r, i: {"seed": r.randint(0, 99), "flips": r.randint(0, 6)}),
    ("02_hash_table", "Hash Table", ["T1"], "hash_table",
     lambda r, i: {"keys": _ints(r, 16, 0, 40), "n": r.randint(1, 16)}),
    ("03_deep_neural_network", "Deep Neural Network", ["T1"], "deep_neural_network",
     lambda r, i: {"x": _ints(r, 4, -20, 20)}),
    ("04_linear_programming", "Linear Programming", ["T2", "T1"], "linear_programming",
     lambda r, i: {"c1": r.randint(1, 9), "c2": r.randint(1, 9), "b1": r.randint(4, 20), "b2": r.randint(4, 30)}),
    ("05_binary_tree", "Binary Tree", ["T2", "T1"], "binary_tree",
     lambda r, i: {"keys": _ints(r, 16, 0, 99), "count": r.randint(1, 16)}),
    ("06_k_nearest_neighbor", "K-Nearest Neighbor", ["T2", "T1"], "k_nearest_neighbor",
     lambda r, i: {"px": r.randint(0, 9), "py": r.randint(0, 9), "k": r.randint(1, 5), "n": r.randint(5, 12)}),
    ("07_linked_list", "Linked List", ["T3"], "linked_list",
     lambda r, i: {"vals": _ints(r, 16, 0, 50), "n": r.randint(1, 16)}),
    ("08_depth_first_search", "Depth-First Search", ["T3"], "depth_first_search",
     lambda r, i: {"edges": _ints(r, 8, 0, 255), "start": r.randint(0, 7)}),
    ("09_breadth_first_search", "Breadth-First Search", ["T3", "T1", "T2"], "bfs_top", None),
    ("10_edge_detection", "Edge Detection", ["T4"], "edge_detection",
     lambda r, i: {"pixels": _ints(r, 36, 0, 255), "threshold": r.randint(50, 400)}),
    ("11_greedy_algorithm", "Greedy Algorithm", ["T4"], "greedy_algorithm",
     lambda r, i: {"amount": r.randint(0, 300), "limit": r.randint(1, 6)}),
    ("12_bubble_sort", "Bubble Sort", ["T4"], "bubble_sort",
     lambda r, i: {"data": _ints(r, 10, 0, 99), "n": r.randint(1, 10)}),
    ("13_support_vector_machine", "Support Vector Machine", ["T5"], "support_vector_machine",
     lambda r, i: {"scale": r.randint(0, 6), "labels": r.randint(0, 63)}),
    ("14_fourier_transform", "Fourier Transform", ["T5"], "fourier_transform",
     lambda r, i: {"x": _ints(r, 8, -30, 30), "bins": r.randint(1, 8)}),
    ("15_color_correction", "Color Correction", ["T5"], "color_correction",
     lambda r, i: {"rgb": _ints(r, 24, 0, 255), "gain": r.randint(128, 384)}),
    ("16_fibonacci_sequence", "Fibonacci Sequence", ["T6"], "fibonacci_sequence",
     lambda r, i: {"n": r.randint(0, 40), "variant": r.randint(0, 3)}),
    ("17_cyclic_rotation", "Cyclic Rotation", ["T6"], "cyclic_rotation",
     lambda r, i: {"data": _ints(r, 8, 0, 4), "steps": r.randint(0, 9), "dir": r.randint(0, 2)}),
    ("18_aes", "AES", ["T6"], "aes",
     lambda r, i: {"block": _ints(r, 4, 0, 255), "key": r.randint(0, 2**31 - 1), "rounds": r.randint(1, 6)}),
    ("19_data_stream", "Data Stream", ["T7"], "data_stream",
     lambda r, i: {"samples": _ints(r, 16, 0, 99), "n": r.randint(0, 16), "mode": r.randint(0, 5)}),
    ("20_longest_increasing_path", "Longest Increasing Path", ["T7"], "longest_increasing_path",
     lambda r, i: {"grid": _ints(r, 16, 0, 9), "reverse": r.randint(0, 1)}),
    ("21_max_points_on_line", "Max Points on Line", ["T7"], "max_points_on_line",
     lambda r, i: {"xs": _ints(r, 8, 0, 4), "ys": _ints(r, 8, 0, 4), "n": r.randint(1, 8)}),
    # every fifth row has a zero first column, so the division traps
    ("22_qr_decomposition", "QR Decomposition", ["T8"], "qr_decomposition",
     lambda r, i: {"a": [0 if (i % 5 == 0 and c % 3 == 0) else r.randint(-9, 9) for c in range(9)]}),
    # the debug == 3 branch holds the constant out-of-range store and never runs
    ("23_dump_filter", "Dump Filter", ["T8"], "dump_filter",
     lambda r, i: {"samples": _ints(r, 16, 0, 99), "n": r.randint(1, 16), "tolerance": r.randint(5, 40),
                   "debug": r.randint(0, 2)}),
    # every sixth row shifts by 32 or more
    ("24_turbo_encoder", "Turbo Encoder", ["T8"], "turbo_encoder",
     lambda r, i: {"message": r.randint(0, 65535), "tail_shift": r.randint(32, 40) if i % 6 == 0 else r.randint(0, 27)}),
]

REPORTS = {
    "09_breadth_first_search": [{"target": "BFS", "metric": "AREA", "magnitude": 0.8,
                                 "note": "top function BFS has a large area"}],
    "10_edge_detection": [{"target": "image", "metric": "MEMORY_BANDWIDTH", "magnitude": 0.6,
                           "note": "stencil reads of image stall on a single port"}],
}


def build_data() -> None:
    entries = []
    for bid, name, classes, entry, gen in BENCHMARKS:
        rng = random.Random(f"{SEED}:{bid}")
        rows = bfs_rows(rng) if gen is None else [{"args": gen(rng, i)} for i in range(ROWS)]
        d = ROOT / "benchmarks" / bid
        save_dataset(d / "data.jsonl", [ExecEnv.from_json(r) for r in rows])
        item = {"id": bid, "name": name, "class": classes[0], "file": f"benchmarks/{bid}/orig.c",
                "golden": f"benchmarks/{bid}/golden.c", "entry": entry,
                "dataset": f"benchmarks/{bid}/data.jsonl", "expected_classes": classes}
        if bid in REPORTS:
            (d / "report.json").write_text(json.dumps({"entries": REPORTS[bid]}, indent=2) + "\n")
            item["report"] = f"benchmarks/{bid}/report.json"
        entries.append(item)
    (ROOT / "manifest.json").write_text(json.dumps({"benchmarks": entries}, indent=2) + "\n")


def record_cassettes() -> None:
    from hlsrepair.llm import OracleBackend, RecordBackend
    from hlsrepair.pipeline import ARMS, Config, load_manifest, run_corpus
    benches = load_manifest(ROOT / "manifest.json")
    for arm, flags in ARMS.items():
        path = ROOT / "cassettes" / f"{arm}.jsonl"
        if path.exists():
            path.unlink()
        cfg = Config(**flags)
        run_corpus(benches, cfg, 1, arm=arm,
                   backend_factory=lambda b, c, p=path: RecordBackend(OracleBackend(b.golden_text()), p))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cassettes", action="store_true")
    args = ap.parse_args()
    build_data()
    if args.cassettes:
        record_cassettes()


if __name__ == "__main__":
    main()
