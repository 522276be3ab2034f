"""Inequality rows stored as data and evaluated against parameter values.

Expressions are integer arithmetic over report fields (``+``, ``-``, ``*``,
integer literals, names); guards may also use comparisons and ``and``.
"""

from __future__ import annotations

import ast
import json
import operator
from dataclasses import dataclass
from importlib import resources
from typing import Mapping, Optional

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}
_CMPOPS = {
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
}
_RELATIONS = {"<=": operator.le, "<": operator.lt, "==": operator.eq, ">=": operator.ge}


class MissingField(KeyError):
    """An expression referenced a field that is absent from the values."""


def names_in(expr: str) -> set[str]:
    return {node.id for node in ast.walk(ast.parse(expr, mode="eval")) if isinstance(node, ast.Name)}


def evaluate(expr: str, values: Mapping[str, Optional[int]]):
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.Name):
            value = values.get(node.id)
            if value is None:
                raise MissingField(node.id)
            return value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                if type(op) not in _CMPOPS:
                    break
                right = ev(comp)
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            else:
                return True
        if isinstance(node, ast.BoolOp) and isinstance(node.op, ast.And):
            return all(ev(v) for v in node.values)
        raise ValueError(f"unsupported expression element in {expr!r}: {ast.dump(node)}")

    return ev(ast.parse(expr, mode="eval"))


@dataclass(frozen=True)
class LedgerRow:
    name: str
    group: str
    lhs: str
    rel: str
    rhs: str
    guard: Optional[str] = None
    advisory: bool = False

    def fields(self) -> set[str]:
        out = names_in(self.lhs) | names_in(self.rhs)
        if self.guard:
            out |= names_in(self.guard)
        return out


@dataclass(frozen=True)
class RowOutcome:
    row: LedgerRow
    status: str  # "pass" | "fail" | "skipped" (field absent) | "guarded" (guard false)
    lhs: Optional[int] = None
    rhs: Optional[int] = None


def check_row(row: LedgerRow, values: Mapping[str, Optional[int]]) -> RowOutcome:
    try:
        if row.guard and not evaluate(row.guard, values):
            return RowOutcome(row, "guarded")
        lhs, rhs = evaluate(row.lhs, values), evaluate(row.rhs, values)
    except MissingField:
        return RowOutcome(row, "skipped")
    ok = _RELATIONS[row.rel](lhs, rhs)
    return RowOutcome(row, "pass" if ok else "fail", lhs, rhs)


def load_rows(text: Optional[str] = None) -> list[LedgerRow]:
    """Rows from ``text`` (JSON) or from the bundled ledger."""
    if text is None:
        text = resources.files("coarsepath").joinpath("ledger.json").read_text()
    data = json.loads(text)
    known = set(data.get("fields", []))
    rows = []
    for raw in data["rows"]:
        row = LedgerRow(
            raw["name"], raw.get("group", ""), raw["lhs"], raw["rel"], raw["rhs"],
            raw.get("guard"), bool(raw.get("advisory", False)),
        )
        if row.rel not in _RELATIONS:
            raise ValueError(f"row {row.name!r}: unknown relation {row.rel!r}")
        if known and not row.fields() <= known:
            raise ValueError(f"row {row.name!r} references unknown fields {row.fields() - known}")
        rows.append(row)
    return rows
