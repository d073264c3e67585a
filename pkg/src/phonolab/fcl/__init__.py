from importlib import resources

from .engine import (
    COG_INTERVALS,
    defuzzify_grid,
    defuzzify_singletons,
    infer,
    membership,
    membership_grid,
    output_grid,
    term_centroid,
)
from .model import (
    BoolExpr,
    Condition,
    Consequent,
    FuzzySystem,
    InferenceTrace,
    InputVariable,
    OutputVariable,
    Rule,
    RuleBlock,
    RuleFiring,
    Term,
)
from .parser import parse_fcl
from .writer import serialize_fcl


def default_kb_text() -> str:
    """FCL source of the shipped default knowledge base."""
    return (resources.files("phonolab") / "kb" / "default.fcl").read_text("utf-8")


def default_kb() -> FuzzySystem:
    return parse_fcl(default_kb_text())


__all__ = [
    "COG_INTERVALS",
    "BoolExpr",
    "Condition",
    "Consequent",
    "FuzzySystem",
    "InferenceTrace",
    "InputVariable",
    "OutputVariable",
    "Rule",
    "RuleBlock",
    "RuleFiring",
    "Term",
    "default_kb",
    "default_kb_text",
    "defuzzify_grid",
    "defuzzify_singletons",
    "infer",
    "membership",
    "membership_grid",
    "output_grid",
    "parse_fcl",
    "serialize_fcl",
    "term_centroid",
]
