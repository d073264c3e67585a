"""Data model for parsed fuzzy function blocks and inference traces."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Optional, Union

AND_OPS = ("MIN", "PROD")
ACT_OPS = ("MIN", "PROD")
ACCU_OPS = ("MAX",)
METHODS = ("COG", "COGS", "MOM")


@dataclass
class Term:
    """Membership function: a piecewise-linear point list or a singleton."""

    name: str
    points: Optional[tuple[tuple[float, float], ...]] = None
    singleton: Optional[float] = None

    @property
    def is_singleton(self) -> bool:
        return self.singleton is not None


@dataclass
class InputVariable:
    name: str
    terms: dict[str, Term] = field(default_factory=dict)
    range: Optional[tuple[float, float]] = None


@dataclass
class OutputVariable:
    name: str
    terms: dict[str, Term] = field(default_factory=dict)
    method: str = "COG"
    default: float = 0.0
    range: Optional[tuple[float, float]] = None


@dataclass
class Condition:
    variable: str
    term: str
    negated: bool = False


@dataclass
class BoolExpr:
    op: str                     # AND | OR
    left: Union[Condition, "BoolExpr"]
    right: Union[Condition, "BoolExpr"]


Antecedent = Union[Condition, BoolExpr]


@dataclass
class Consequent:
    variable: str
    term: str


@dataclass
class Rule:
    id: int
    antecedent: Antecedent
    consequents: list[Consequent]
    weight: float = 1.0         # the one mutable knob; everything else is structure


@dataclass
class RuleBlock:
    name: str
    and_op: str = "MIN"
    act_op: str = "MIN"
    accu_op: str = "MAX"
    rules: list[Rule] = field(default_factory=list)


@dataclass
class FuzzySystem:
    name: str
    inputs: dict[str, InputVariable] = field(default_factory=dict)
    outputs: dict[str, OutputVariable] = field(default_factory=dict)
    rule_blocks: list[RuleBlock] = field(default_factory=list)

    def iter_rules(self):
        for block in self.rule_blocks:
            for rule in block.rules:
                yield block, rule

    def rule_count(self) -> int:
        return sum(len(block.rules) for block in self.rule_blocks)

    def rule_signature(self) -> tuple:
        """Structural identity of the rule set; weights excluded so traces
        stay valid across weight updates."""
        return tuple(
            (block.name, rule.id,
             tuple((c.variable, c.term) for c in rule.consequents))
            for block, rule in self.iter_rules()
        )

    def find_rule(self, block_name: str, rule_id: int) -> Rule:
        for block in self.rule_blocks:
            if block.name == block_name:
                for rule in block.rules:
                    if rule.id == rule_id:
                        return rule
        raise KeyError(f"no rule {rule_id} in block {block_name!r}")

    def clone(self) -> "FuzzySystem":
        return copy.deepcopy(self)


@dataclass
class RuleFiring:
    """How one rule responded to a given input vector."""

    block: str
    rule_id: int
    degree: float              # antecedent truth, before the rule weight
    activation: float          # degree * weight; what shapes the output
    consequents: tuple[tuple[str, str], ...]

    def to_dict(self) -> dict:
        return {
            "block": self.block,
            "rule_id": self.rule_id,
            "degree": self.degree,
            "activation": self.activation,
            "consequents": [list(c) for c in self.consequents],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "RuleFiring":
        return cls(
            block=doc["block"],
            rule_id=int(doc["rule_id"]),
            degree=float(doc["degree"]),
            activation=float(doc["activation"]),
            consequents=tuple(
                (str(v), str(t)) for v, t in doc["consequents"]
            ),
        )


@dataclass
class InferenceTrace:
    """Full record of one inference: crisp outputs plus per-rule firings."""

    outputs: dict[str, float]
    firings: list[RuleFiring]
    defaulted: tuple[str, ...] = ()   # outputs that fell back to DEFAULT

    def signature(self) -> tuple:
        return tuple((f.block, f.rule_id, f.consequents) for f in self.firings)

    def fired(self) -> list[RuleFiring]:
        return [f for f in self.firings if f.activation > 0.0]

    def to_dict(self) -> dict:
        return {
            "outputs": dict(self.outputs),
            "firings": [f.to_dict() for f in self.firings],
            "defaulted": list(self.defaulted),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "InferenceTrace":
        return cls(
            outputs={k: float(v) for k, v in doc["outputs"].items()},
            firings=[RuleFiring.from_dict(f) for f in doc["firings"]],
            defaulted=tuple(doc.get("defaulted", ())),
        )
