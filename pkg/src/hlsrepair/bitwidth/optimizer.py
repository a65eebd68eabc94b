"""The standalone bit-width optimization program.

The deterministic generator instruments every integer variable with a
min/max recording shim, embeds the dataset and appends a ``main`` that runs
the entry function once per row and prints ``name min max`` lines.
"""
from __future__ import annotations

import re
from typing import Optional, Sequence

from ..cfront import ast as A
from ..cfront.scope import resolve
from ..cfront.source import Edit, SourceUnit
from ..cfront.types import ArrayType, IntType, PointerType, StructType
from ..interp import ExecEnv, run

_ASSIGN_OPS = ("=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=")


def _strip(e):
    while isinstance(e, A.Paren):
        e = e.expr
    return e


def _labels(syms) -> dict[int, str]:
    counts: dict[str, int] = {}
    for s in syms:
        counts[s.name] = counts.get(s.name, 0) + 1
    return {id(s): s.name if counts[s.name] == 1 else f"{s.function or 'global'}.{s.name}" for s in syms}


def parse_report(text: str) -> dict[str, tuple[int, int]]:
    """``name min max`` lines back into a dict."""
    out = {}
    for line in text.splitlines():
        parts = line.split()
        if len(parts) == 3:
            try:
                out[parts[0]] = (int(parts[1]), int(parts[2]))
            except ValueError:
                continue
    return out


def _literal(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return "{" + ", ".join(_literal(x) for x in v) + "}" if v else "{0}"
    if isinstance(v, dict):
        return "{" + ", ".join(_literal(x) for x in v.values()) + "}"
    raise ValueError(f"cannot embed value {v!r}")


def _shape(v) -> list[int]:
    dims = []
    while isinstance(v, list):
        dims.append(max(1, len(v)))
        v = v[0] if v else None
    return dims


def emit_optimizer_program(unit: SourceUnit, dataset: Sequence[ExecEnv], entry: str,
                           *, mode: str = "deterministic", backend=None, ledger=None) -> str:
    """Source text of the instrumented range-recording program.

    In ``live`` mode the text comes from the LLM backend (stage
    BITWIDTH_SCRIPT); otherwise the built-in generator produces it.
    """
    if mode != "deterministic":
        from ..llm import Stage, build_prompt, extract_program
        if backend is None:
            raise ValueError("live mode needs a backend")
        desc = _describe_dataset(dataset)
        prompt = build_prompt(Stage.BITWIDTH_SCRIPT, unit.text, error_log=desc)
        resp = backend.complete(prompt)
        if ledger is not None:
            ledger.record(prompt, resp)
        return extract_program(resp.text)
    return _generate(unit, list(dataset), entry)


def _describe_dataset(dataset: Sequence[ExecEnv]) -> str:
    rows = list(dataset)
    if not rows:
        return "dataset: 0 rows"
    keys = sorted(rows[0].args) + sorted(rows[0].arrays)
    return f"dataset: {len(rows)} rows; fields: {', '.join(keys)}"


def _generate(unit: SourceUnit, rows: list[ExecEnv], entry: str) -> str:
    tu = unit.ast
    if tu is None:
        raise ValueError("unit does not parse")
    res = resolve(tu)
    raw = unit.raw
    text = lambda n: raw[n.span.start:n.span.end].decode()
    tracked = [s for s in res.variables if isinstance(s.ctype, IntType) and not s.node.derivs
               and s.kind in ("local", "param", "global", "static")]
    labels = _labels(tracked)
    ids = {}
    for i, s in enumerate(tracked):
        ids[id(s)] = i
    type_of = {}
    for s in tracked:
        spec = s.decl.spec
        qual = [q for q in spec.qualifiers if q != "const"]
        base = raw[spec.span.start:spec.span.end].decode()
        base = re.sub(r"\b(static|extern|register|const|volatile|inline)\b", "", base).strip()
        type_of[id(s)] = " ".join([*qual, base]) if qual else base

    def rec_of(node) -> Optional[int]:
        n = _strip(node)
        if isinstance(n, A.Ident):
            sym = res.lookup(n)
            if sym is not None and id(sym) in ids:
                return ids[id(sym)]
        return None

    parents = {}
    for node in tu.walk():
        for child in node.children():
            parents[id(child)] = node
    edits: list[Edit] = []
    for node in tu.walk():
        if isinstance(node, A.Assign) and node.op in _ASSIGN_OPS:
            k = rec_of(node.target)
            if k is None:
                continue
            if node.op == "=":
                edits.append(Edit(node.value.span.start, node.value.span.end, f"__rec{k}({text(node.value)})"))
            else:
                edits.append(Edit(node.span.start, node.span.start, f"__rec{k}("))
                edits.append(Edit(node.span.end, node.span.end, ")"))
        elif isinstance(node, (A.Unary, A.Postfix)) and node.op in ("++", "--"):
            k = rec_of(node.operand)
            if k is None:
                continue
            if isinstance(node, A.Unary):
                edits.append(Edit(node.span.start, node.span.start, f"__rec{k}("))
                edits.append(Edit(node.span.end, node.span.end, ")"))
                continue
            op = "+" if node.op == "++" else "-"
            undo = "-" if op == "+" else "+"
            operand = text(node.operand)
            parent = parents.get(id(node))
            if isinstance(parent, A.ExprStmt) or (isinstance(parent, A.For) and parent.step is node):
                new = f"__rec{k}({op}{op}{operand})"
            else:
                new = f"(({type_of[id(tracked[k])]})(__rec{k}({op}{op}{operand}) {undo} 1))"
            edits.append(Edit(node.span.start, node.span.end, new))
    for s in tracked:
        k = ids[id(s)]
        init = s.node.init
        if init is not None and s.kind == "local" and "static" not in getattr(s.decl, "storage", ()):
            edits.append(Edit(init.span.start, init.span.end, f"__rec{k}({text(init)})"))
    # parameters: record at function entry
    for fd in tu.functions().values():
        calls = []
        for p in fd.params:
            for s in tracked:
                if s.node is p.declarator:
                    calls.append(f"__rec{ids[id(s)]}({s.name});")
        if calls:
            pos = fd.body.span.start + 1
            edits.append(Edit(pos, pos, " " + " ".join(calls)))
    renamed_main = None
    if "main" in tu.functions():
        renamed_main = "__original_main"
        d = tu.functions()["main"].declarator
        m = re.search(rb"\bmain\b", raw[d.span.start:d.span.end])
        start = d.span.start + m.start()
        edits.append(Edit(start, start + 4, renamed_main))
        if entry == "main":
            entry = renamed_main

    shims = ["/* range recording shims */"]
    for s in tracked:
        k = ids[id(s)]
        t = type_of[id(s)]
        shims.append(f"long long __min{k}; long long __max{k}; int __seen{k};")
        shims.append(f"{t} __rec{k}({t} v) {{ if (!__seen{k} || v < __min{k}) __min{k} = v; "
                     f"if (!__seen{k} || v > __max{k}) __max{k} = v; __seen{k} = 1; return v; }}")
    header = "\n".join(shims) + "\n"
    first = next((i for i in tu.items if not isinstance(i, (A.Directive, A.Define))), None)
    hpos = first.span.start if first is not None else len(raw)
    # Shims need the typedefs/structs they mention, so place them after the
    # last type declaration preceding the first function.
    for item in tu.items:
        if isinstance(item, A.FunctionDef):
            break
        if isinstance(item, A.Declaration) and ("typedef" in item.storage or not item.declarators):
            hpos = item.span.end
    edits.append(Edit(hpos, hpos, "\n" + header))
    body = unit.apply_edits(edits).text
    return body + "\n" + _epilogue(unit, res, tracked, labels, ids, rows, entry)


def _epilogue(unit, res, tracked, labels, ids, rows, entry) -> str:
    tu = unit.ast
    raw = unit.raw
    fd = tu.functions().get(entry if entry != "__original_main" else "main")
    if fd is None:
        raise ValueError(f"no entry function '{entry}'")
    # keep only rows that run to completion, like the profiler does
    rows = [r for r in rows if run(unit, fd.name, r).ok]
    globals_ = [s for s in res.variables if s.kind in ("global", "static")]
    lines = ["", "/* bit width optimization driver */", "int main(void) {"]
    saved = []
    for g in globals_:
        t = g.ctype
        name = g.name
        sname = f"__saved_{name}" if g.kind == "global" else None
        if sname is None:
            continue
        spec = raw[g.decl.spec.span.start:g.decl.spec.span.end].decode()
        spec = re.sub(r"\b(static|extern|const)\b", "", spec).strip()
        dims = ""
        tt = t
        while isinstance(tt, ArrayType):
            dims += f"[{tt.length}]"
            tt = tt.elem
        stars = "*" * sum(1 for d in g.node.derivs if isinstance(d, A.PointerDeriv))
        lines.append(f"    {spec} {stars}{sname}{dims};")
        if dims:
            lines.append(f"    memcpy({sname}, {name}, sizeof({name}));")
        else:
            lines.append(f"    {sname} = {name};")
        saved.append((g, sname, bool(dims)))
    for i, row in enumerate(rows):
        lines.append(f"    {{ /* row {i} */")
        for g, sname, is_arr in saved:
            if is_arr:
                lines.append(f"        memcpy({g.name}, {sname}, sizeof({g.name}));")
            else:
                lines.append(f"        {g.name} = {sname};")
            if id(g) in ids and g.node.init is not None:
                lines.append(f"        __rec{ids[id(g)]}({g.name});")
        for name, value in row.arrays.items():
            lines.extend(_assign_global(name, value, "        "))
        args = []
        for j, p in enumerate(fd.params):
            pname = p.declarator.name
            if pname is None or pname not in row.args:
                raise ValueError(f"row {i} lacks argument '{pname}'")
            v = row.args[pname]
            spec = raw[p.spec.span.start:p.spec.span.end].decode()
            derivs = p.declarator.derivs
            if isinstance(v, (list, dict)) and derivs:
                dims = "".join(f"[{n}]" for n in _shape(v)[1:])
                lines.append(f"        {spec} __arg{j}[]{dims} = {_literal(v if isinstance(v, list) else [v])};")
                args.append(f"__arg{j}")
            elif isinstance(v, dict):
                lines.append(f"        {spec} __arg{j} = {_literal(v)};")
                args.append(f"__arg{j}")
            else:
                args.append(f"({spec})({_literal(v)})")
        call_name = entry
        lines.append(f"        {call_name}({', '.join(args)});")
        lines.append("    }")
    for s in tracked:
        k = ids[id(s)]
        lines.append(f'    if (__seen{k}) printf("{labels[id(s)]} %lld %lld\\n", __min{k}, __max{k});')
    lines.append("    return 0;")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _assign_global(name: str, value, indent: str) -> list[str]:
    out = []

    def walk(prefix: str, v):
        if isinstance(v, list):
            for i, x in enumerate(v):
                walk(f"{prefix}[{i}]", x)
        elif isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}.{k}", x)
        else:
            out.append(f"{indent}{prefix} = {_literal(v)};")
    walk(name, value)
    return out
