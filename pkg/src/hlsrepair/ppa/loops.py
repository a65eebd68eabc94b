"""Static trip counts of simple counted loops."""
from __future__ import annotations

from typing import Optional

from ..cfront import ast as A
from ..cfront.scope import Resolution


def _strip(e):
    while isinstance(e, A.Paren):
        e = e.expr
    return e


def _writes(body: A.Node, res: Resolution, sym) -> bool:
    for n in body.walk():
        target = None
        if isinstance(n, A.Assign):
            target = n.target
        elif isinstance(n, (A.Unary, A.Postfix)) and n.op in ("++", "--"):
            target = n.operand
        elif isinstance(n, A.Unary) and n.op == "&":
            target = n.operand
        if target is not None:
            t = _strip(target)
            if isinstance(t, A.Ident) and res.lookup(t) is sym:
                return True
    return False


def trip_count(loop: A.Node, res: Resolution) -> Optional[int]:
    """Iterations of ``for (i = a; i OP b; i += c)`` with constant a, b, c."""
    if not isinstance(loop, A.For) or loop.cond is None or loop.step is None or loop.init is None:
        return None
    cx = res.ctx
    init = loop.init
    if isinstance(init, A.Declaration) and len(init.declarators) == 1 and init.declarators[0].init is not None:
        d = init.declarators[0]
        sym = next((s for s in res.variables if s.node is d), None)
        start = cx.const_eval(d.init)
    elif isinstance(init, A.ExprStmt) and isinstance(_strip(init.expr), A.Assign) and _strip(init.expr).op == "=":
        a = _strip(init.expr)
        t = _strip(a.target)
        sym = res.lookup(t) if isinstance(t, A.Ident) else None
        start = cx.const_eval(a.value)
    else:
        return None
    if sym is None or start is None:
        return None
    step_e = _strip(loop.step)
    step = None
    if isinstance(step_e, (A.Unary, A.Postfix)) and step_e.op in ("++", "--"):
        t = _strip(step_e.operand)
        if isinstance(t, A.Ident) and res.lookup(t) is sym:
            step = 1 if step_e.op == "++" else -1
    elif isinstance(step_e, A.Assign) and step_e.op in ("+=", "-="):
        t = _strip(step_e.target)
        c = cx.const_eval(step_e.value)
        if isinstance(t, A.Ident) and res.lookup(t) is sym and c:
            step = c if step_e.op == "+=" else -c
    if not step:
        return None
    cond = _strip(loop.cond)
    if not isinstance(cond, A.Binary) or cond.op not in ("<", "<=", ">", ">=", "!="):
        return None
    left, right, op = _strip(cond.left), _strip(cond.right), cond.op
    if isinstance(right, A.Ident) and res.lookup(right) is sym:
        left, right = right, left
        op = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "!=": "!="}[op]
    if not (isinstance(left, A.Ident) and res.lookup(left) is sym):
        return None
    bound = cx.const_eval(right)
    if bound is None or _writes(loop.body, res, sym):
        return None
    if op == "<=":
        bound, op = bound + 1, "<"
    elif op == ">=":
        bound, op = bound - 1, ">"
    if op == "!=":
        op = "<" if step > 0 else ">"
        if (bound - start) % step:
            return None
    if op == "<":
        return max(0, -(-(bound - start) // step)) if step > 0 else None
    return max(0, -(-(start - bound) // -step)) if step < 0 else None
