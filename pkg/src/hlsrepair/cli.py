"""Command-line entry point: check, repair, bitwidth, optimize, corpus."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BACKEND = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML config file")
    common.add_argument("--mode", choices=("live", "record", "replay", "oracle"))
    common.add_argument("--cassette", help="JSONL cassette for record/replay")
    common.add_argument("--no-rag", action="store_true")
    common.add_argument("--no-scripts", action="store_true")
    common.add_argument("--dataset", help="JSONL dataset of input records")
    common.add_argument("--entry", help="entry function for simulation")
    common.add_argument("--json", action="store_true", help="machine-readable stdout")
    common.add_argument("--skip-pass", action="append", default=[], metavar="NAME")
    common.add_argument("--guard-bit", action="store_true")
    common.add_argument("--compile-cmd", help="external HLS compile command; {file} is substituted")

    p = argparse.ArgumentParser(prog="hlsrepair", description="Repair C programs for high-level synthesis.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="report HLS incompatibilities")
    c.add_argument("file")
    r = sub.add_parser("repair", parents=[common], help="run the full repair flow")
    r.add_argument("file")
    r.add_argument("--golden", help="golden repair for the oracle backend")
    r.add_argument("--report", help="bottleneck report (JSON or CSV) for pragma optimization")
    r.add_argument("--output", help="where to write the repaired file")
    b = sub.add_parser("bitwidth", parents=[common], help="profile and narrow integer widths")
    b.add_argument("file")
    b.add_argument("--policy", choices=("none", "guard"), default=None)
    b.add_argument("--write", action="store_true", help="write <name>.ac.c beside the input")
    o = sub.add_parser("optimize", parents=[common], help="insert pragmas from a bottleneck report")
    o.add_argument("file")
    o.add_argument("report")
    o.add_argument("--output")
    k = sub.add_parser("corpus", parents=[common], help="run a benchmark manifest")
    k.add_argument("manifest", nargs="?", help="manifest JSON (defaults to the bundled corpus)")
    k.add_argument("-n", type=int, default=15, help="instances per benchmark")
    k.add_argument("--arms", action="store_true", help="run baseline, +scripts and +RAG arms")
    k.add_argument("--parallel", type=int, help="concurrent benchmarks")
    return p


def _config(args):
    from .pipeline import Config
    cfg = Config.load(args.config) if args.config else None
    changes = {}
    if args.mode:
        changes["mode"] = args.mode
    if args.cassette:
        changes["cassette"] = args.cassette
    if args.no_rag:
        changes["rag"] = False
    if args.no_scripts:
        changes["scripts"] = False
    if args.skip_pass:
        changes["skip_passes"] = tuple(args.skip_pass)
    if args.guard_bit:
        changes["guard_bit"] = True
    if args.compile_cmd:
        changes["compile_cmd"] = args.compile_cmd
    if getattr(args, "parallel", None):
        changes["parallelism"] = args.parallel
    return Config.from_mapping(changes, cfg if cfg is not None else Config())


def _unit(path: str):
    from .cfront import SourceUnit
    try:
        return SourceUnit.from_file(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from e


def _dataset(args):
    if not args.dataset:
        return []
    from .interp import ExecError, load_dataset
    try:
        return load_dataset(args.dataset)
    except (OSError, ExecError) as e:
        raise UsageError(f"cannot load dataset: {e}") from e


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True) if args.json else text)


def cmd_check(args) -> int:
    from .detect import check
    cfg = _config(args)
    unit = _unit(args.file)
    rows = _dataset(args)[:cfg.check_rows]
    if rows and not args.entry:
        raise UsageError("--dataset needs --entry")
    rep = check(unit, dataset=rows or None, entry=args.entry if rows else None, compile_cmd=cfg.compile_cmd)
    payload = rep.to_json()
    # the report JSON is the documented stdout of this command
    print(json.dumps(payload, indent=2, sort_keys=True) if args.json else (rep.log or "no diagnostics") + f"\n{rep.verdict}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_repair(args) -> int:
    from .pipeline import run_instance
    from .ppa import BottleneckReport
    cfg = _config(args)
    rows = _dataset(args)
    if rows and not args.entry:
        raise UsageError("--dataset needs --entry")
    golden = Path(args.golden).read_text(encoding="utf-8") if args.golden else None
    report = BottleneckReport.load(args.report) if args.report else None
    session = run_instance(_unit(args.file), cfg, entry=args.entry, dataset=rows, golden=golden, report=report)
    out = Path(args.output) if args.output else _beside(args.file, ".hlsc.c")
    if session.final is not None:
        out.write_bytes(session.final.raw)
    verdict = "SIM_PASS" if session.sim_pass else "COMPILE_PASS" if session.compile_pass else "FAIL"
    payload = session.to_json(with_timing=False)
    payload["output"] = str(out)
    _emit(args, payload, f"{verdict} after {session.repair_queries} repair queries; wrote {out}")
    if session.unrecorded or (session.backend_errors and not session.compile_pass):
        for e in session.backend_errors:
            print(f"backend: {e}", file=sys.stderr)
        return EXIT_BACKEND
    return EXIT_OK if session.compile_pass else EXIT_FAIL


def _beside(path: str, suffix: str) -> Path:
    p = Path(path)
    name = p.name[:-2] if p.name.endswith(".c") else p.name
    return p.with_name(name + suffix)


def cmd_bitwidth(args) -> int:
    from .bitwidth import Policy, apply_with_report, plan
    from .interp import ExecError, ProfileError, profile
    cfg = _config(args)
    unit = _unit(args.file)
    rows = _dataset(args)
    if not args.entry:
        raise UsageError("bitwidth needs --entry")
    policy = Policy(args.policy) if args.policy else (Policy.GUARD_BIT if cfg.guard_bit else Policy.NONE)
    try:
        bw = plan(profile(unit, args.entry, rows), unit, policy)
    except (ProfileError, ExecError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    payload = {"plan": bw.to_json()}
    if args.write:
        res = apply_with_report(unit, bw, cfg.include_header)
        out = _beside(args.file, ".ac.c")
        out.write_bytes(res.unit.raw)
        payload["output"] = str(out)
        payload["skipped"] = [{"name": e.name, "reason": why} for e, why in res.skipped]
    text = "\n".join(f"{e['function']}.{e['name']}: [{e['min']}, {e['max']}] -> {e['type']}"
                     for e in payload["plan"])
    _emit(args, payload, text or "no integer variables observed")
    return EXIT_OK


def cmd_optimize(args) -> int:
    from .llm import BackendError
    from .pipeline.session import _backend_for
    from .ppa import BottleneckReport, OptimizeError, optimize
    cfg = _config(args)
    unit = _unit(args.file)
    try:
        report = BottleneckReport.load(args.report)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot load report: {e}") from e
    rows = _dataset(args)[:cfg.check_rows]
    backend = _backend_for(cfg, None) if cfg.ppa_mode == "llm" else None
    try:
        res = optimize(unit, report, cfg.ppa_mode, entry=args.entry if rows else None, dataset=rows or None,
                       backend=backend)
    except BackendError as e:
        print(f"backend: {e}", file=sys.stderr)
        return EXIT_BACKEND
    except OptimizeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    out = Path(args.output) if args.output else _beside(args.file, ".opt.c")
    out.write_bytes(res.unit.raw)
    payload = res.to_json()
    payload["output"] = str(out)
    text = "\n".join(f"line {e.line}: {e.text}" for e in res.edits) or "no pragmas inserted"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_corpus(args) -> int:
    from .pipeline import load_manifest, run_arms, run_corpus
    cfg = _config(args)
    if args.manifest:
        manifest = args.manifest
    else:
        from .corpus import MANIFEST
        manifest = MANIFEST
    benches = load_manifest(manifest)
    runs = run_arms(benches, cfg, args.n) if args.arms else {"custom": run_corpus(benches, cfg, args.n)}
    payload = {arm: run.report.to_json() for arm, run in runs.items()}
    text = "\n\n".join(run.report.render() for run in runs.values())
    _emit(args, payload, text)
    unrecorded = any(s.unrecorded for run in runs.values() for ss in run.sessions.values() for s in ss)
    return EXIT_BACKEND if unrecorded else EXIT_OK


COMMANDS = {"check": cmd_check, "repair": cmd_repair, "bitwidth": cmd_bitwidth,
            "optimize": cmd_optimize, "corpus": cmd_corpus}


def main(argv: Optional[Sequence[str]] = None) -> int:
    from .pipeline import ConfigError, ManifestError
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError, ManifestError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
