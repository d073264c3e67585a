"""Canonical serializer for fuzzy systems.

Emits the same subset the parser accepts; serializing and re-parsing
yields a structurally equal system (floats are written in repr form, which
round-trips exactly).
"""

from __future__ import annotations

from .model import BoolExpr, Condition, FuzzySystem, Term


def _num(value: float) -> str:
    return repr(float(value))


def _term_line(term: Term) -> str:
    if term.is_singleton:
        return f"    TERM {term.name} := {_num(term.singleton)};"
    points = " ".join(f"({_num(x)}, {_num(y)})" for x, y in term.points)
    return f"    TERM {term.name} := {points};"


def _expr(node) -> str:
    if isinstance(node, Condition):
        op = "IS NOT" if node.negated else "IS"
        return f"{node.variable} {op} {node.term}"
    left = _expr(node.left)
    right = _expr(node.right)
    if node.op == "AND":
        # parenthesize OR operands: AND binds tighter
        if isinstance(node.left, BoolExpr) and node.left.op == "OR":
            left = f"({left})"
        if isinstance(node.right, BoolExpr) and node.right.op == "OR":
            right = f"({right})"
    return f"{left} {node.op} {right}"


def serialize_fcl(system: FuzzySystem) -> str:
    lines = [f"FUNCTION_BLOCK {system.name}"]

    if system.inputs:
        lines.append("VAR_INPUT")
        for name in system.inputs:
            lines.append(f"    {name} : REAL;")
        lines.append("END_VAR")
    if system.outputs:
        lines.append("VAR_OUTPUT")
        for name in system.outputs:
            lines.append(f"    {name} : REAL;")
        lines.append("END_VAR")

    for name, var in system.inputs.items():
        lines.append(f"FUZZIFY {name}")
        for term in var.terms.values():
            lines.append(_term_line(term))
        lines.append("END_FUZZIFY")

    for name, out in system.outputs.items():
        lines.append(f"DEFUZZIFY {name}")
        for term in out.terms.values():
            lines.append(_term_line(term))
        lines.append(f"    METHOD : {out.method};")
        lines.append(f"    DEFAULT := {_num(out.default)};")
        if out.range is not None:
            lines.append(
                f"    RANGE := ({_num(out.range[0])} .. {_num(out.range[1])});")
        lines.append("END_DEFUZZIFY")

    for block in system.rule_blocks:
        lines.append(f"RULEBLOCK {block.name}")
        lines.append(f"    AND : {block.and_op};")
        lines.append(f"    ACT : {block.act_op};")
        lines.append(f"    ACCU : {block.accu_op};")
        for rule in block.rules:
            consequents = ", ".join(
                f"{c.variable} IS {c.term}" for c in rule.consequents)
            suffix = "" if rule.weight == 1.0 else f" WITH {_num(rule.weight)}"
            lines.append(
                f"    RULE {rule.id} : IF {_expr(rule.antecedent)} "
                f"THEN {consequents}{suffix};")
        lines.append("END_RULEBLOCK")

    lines.append("END_FUNCTION_BLOCK")
    return "\n".join(lines) + "\n"
