"""Tiny safe evaluator for the integer expressions used in data files.

Supports integer literals, names, + - * // %, comparisons (including
``in`` against a tuple), ``and``/``or``/``not`` and unary minus.
"""

from __future__ import annotations

import ast
import operator
from functools import lru_cache
from typing import Mapping

_BIN = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
}
_CMP = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.In: lambda a, b: a in b,
    ast.NotIn: lambda a, b: a not in b,
}


class ExprError(ValueError):
    pass


@lru_cache(maxsize=None)
def _parse(src: str) -> ast.expr:
    try:
        return ast.parse(src, mode="eval").body
    except SyntaxError as exc:
        raise ExprError(f"bad expression {src!r}") from exc


def evaluate(src: str | int, env: Mapping[str, int]):
    if isinstance(src, int):
        return src
    return _ev(_parse(str(src)), env)


def _ev(node: ast.expr, env: Mapping[str, int]):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise ExprError(f"unknown name {node.id!r}")
        return env[node.id]
    if isinstance(node, ast.Tuple):
        return tuple(_ev(e, env) for e in node.elts)
    if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
        return _BIN[type(node.op)](_ev(node.left, env), _ev(node.right, env))
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            return -_ev(node.operand, env)
        if isinstance(node.op, ast.Not):
            return not _ev(node.operand, env)
    if isinstance(node, ast.BoolOp):
        vals = (_ev(v, env) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.Compare):
        left = _ev(node.left, env)
        for op, right_node in zip(node.ops, node.comparators):
            right = _ev(right_node, env)
            if not _CMP[type(op)](left, right):
                return False
            left = right
        return True
    raise ExprError(f"unsupported expression element {ast.dump(node)}")


def substitute(template: str, env: Mapping[str, int]) -> str:
    """Replace every ``<expr>`` in a template by its evaluated value."""
    out, i = [], 0
    while i < len(template):
        j = template.find("<", i)
        if j < 0:
            out.append(template[i:])
            break
        k = template.index(">", j)
        out.append(template[i:j])
        out.append(str(evaluate(template[j + 1 : k], env)))
        i = k + 1
    return "".join(out)
