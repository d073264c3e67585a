"""Score aggregation and adaptive exercise suggestions.

The knowledge-base contract: inputs named ``severity`` (0..3, derived
from evaluation scores) and ``progress`` (-1..1, score drift between
sessions), outputs named ``difficulty`` (1..5) and ``dosage`` (5..20
exercises per session).

Self-teaching works by nudging rule weights: when the therapist corrects
a suggestion beyond tolerance, each rule that fired moves toward or away
from the therapist's side depending on where its consequent term sits.
Term shapes, variables and rule structure are never touched, so every
adjustment is bounded and reversible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    EmptyScores,
    InputOutOfRange,
    ScoreOutOfRange,
    StaleSuggestion,
    UnknownVariable,
)
from .fcl import FuzzySystem, InferenceTrace, infer, term_centroid

SEVERITY_INPUT = "severity"
PROGRESS_INPUT = "progress"
DIFFICULTY_OUTPUT = "difficulty"
DOSAGE_OUTPUT = "dosage"

MAX_SCORE = 3


def _check_scores(scores):
    for score in scores:
        if isinstance(score, bool) or not isinstance(score, int):
            raise ScoreOutOfRange(f"score {score!r} is not an integer")
        if not 0 <= score <= MAX_SCORE:
            raise ScoreOutOfRange(f"score {score} outside 0..{MAX_SCORE}")


def severity_from_scores(scores) -> float:
    """Impairment level in [0, 3]; a perfect session (all 3s) maps to 0."""
    scores = list(scores)
    if not scores:
        raise EmptyScores("severity needs at least one score")
    _check_scores(scores)
    return MAX_SCORE - sum(scores) / len(scores)


def progress_between(prev_scores, cur_scores) -> float:
    """Normalized score drift in [-1, 1]; no previous session means 0."""
    cur = list(cur_scores)
    if not cur:
        raise EmptyScores("current session has no scores")
    _check_scores(cur)
    prev = list(prev_scores) if prev_scores is not None else []
    if not prev:
        return 0.0
    _check_scores(prev)
    return (sum(cur) / len(cur) - sum(prev) / len(prev)) / MAX_SCORE


@dataclass
class TherapySuggestion:
    difficulty: float
    dosage: float
    trace: InferenceTrace
    severity: float
    progress: float
    child_id: Optional[str] = None
    created_at: float = 0.0


@dataclass
class Override:
    """Therapist correction; at least one output value must be present."""

    difficulty: Optional[float] = None
    dosage: Optional[float] = None


@dataclass(frozen=True)
class LearningConfig:
    eta: float = 0.05   # weight step per unit of antecedent degree
    tau: float = 0.10   # agreement tolerance, as a fraction of output range

    def __post_init__(self):
        if not 0.0 < self.eta < 1.0:
            raise ValueError("eta must lie in (0, 1)")
        if not 0.0 < self.tau < 1.0:
            raise ValueError("tau must lie in (0, 1)")


def suggest(
    kb: FuzzySystem,
    severity: float,
    progress: float,
    child_id: Optional[str] = None,
    created_at: float = 0.0,
) -> TherapySuggestion:
    """Run the knowledge base on one (severity, progress) pair."""
    if not 0.0 <= severity <= 3.0:
        raise InputOutOfRange(f"severity {severity} outside [0, 3]")
    if not -1.0 <= progress <= 1.0:
        raise InputOutOfRange(f"progress {progress} outside [-1, 1]")
    for name in (DIFFICULTY_OUTPUT, DOSAGE_OUTPUT):
        if name not in kb.outputs:
            raise UnknownVariable(f"knowledge base lacks output {name!r}")
    outputs, trace = infer(
        kb, {SEVERITY_INPUT: float(severity), PROGRESS_INPUT: float(progress)}
    )
    return TherapySuggestion(
        difficulty=outputs[DIFFICULTY_OUTPUT],
        dosage=outputs[DOSAGE_OUTPUT],
        trace=trace,
        severity=float(severity),
        progress=float(progress),
        child_id=child_id,
        created_at=created_at,
    )


def apply_override(
    kb: FuzzySystem,
    suggestion: TherapySuggestion,
    override: Override,
    cfg: LearningConfig = LearningConfig(),
) -> FuzzySystem:
    """Return a copy of ``kb`` with rule weights nudged toward the override.

    For each corrected output (beyond ``tau`` times its range) every rule
    that fired moves by ``eta`` times its antecedent degree: down if its
    consequent term's centroid sides with the system's answer, up if it
    sides with the therapist's.  Weights stay clamped to [0, 1].
    """
    corrections = [
        (DIFFICULTY_OUTPUT, override.difficulty),
        (DOSAGE_OUTPUT, override.dosage),
    ]
    if all(value is None for _, value in corrections):
        raise InputOutOfRange("override must correct at least one output")
    if suggestion.trace.signature() != kb.rule_signature():
        raise StaleSuggestion(
            "suggestion trace no longer matches the knowledge base rules")

    for name, value in corrections:
        if value is None:
            continue
        rng = kb.outputs[name].range
        if rng is not None and not rng[0] <= value <= rng[1]:
            raise InputOutOfRange(
                f"override {name} {value} outside [{rng[0]}, {rng[1]}]")

    updated = kb.clone()
    for name, target in corrections:
        if target is None:
            continue
        out = updated.outputs[name]
        lo, hi = out.range
        system_value = suggestion.trace.outputs[name]
        if abs(target - system_value) <= cfg.tau * (hi - lo):
            continue
        for firing in suggestion.trace.firings:
            if firing.activation <= 0.0:
                continue
            terms = [t for variable, t in firing.consequents if variable == name]
            if not terms:
                continue
            rule = updated.find_rule(firing.block, firing.rule_id)
            for term_name in terms:
                centroid = term_centroid(out.terms[term_name], (lo, hi))
                to_system = abs(centroid - system_value)
                to_therapist = abs(centroid - target)
                step = cfg.eta * firing.degree
                if to_therapist < to_system:
                    rule.weight = min(1.0, rule.weight + step)
                elif to_system < to_therapist:
                    rule.weight = max(0.0, rule.weight - step)
    return updated
