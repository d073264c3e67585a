"""Fuzzification, rule evaluation, accumulation and defuzzification.

Mamdani-style: rule activations clip (MIN) or scale (PROD) the consequent
terms, per-output aggregation is MAX, and the aggregate is defuzzified by
centroid (COG), singleton centroid (COGS) or mean-of-maxima (MOM).  COG
and MOM run on a fixed 1000-interval discretization of the output RANGE
so results are reproducible to the digit across platforms.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import MissingInput, NonFiniteInput, UnknownVariable
from .model import (
    Condition,
    FuzzySystem,
    InferenceTrace,
    OutputVariable,
    RuleFiring,
    Term,
)

COG_INTERVALS = 1000
MOM_EPS = 1e-12


def membership(term: Term, x: float) -> float:
    """Degree of membership of ``x`` in ``term``.

    Piecewise terms interpolate linearly and clamp to the nearest
    endpoint's y outside their span; singletons match only exactly.
    """
    if term.is_singleton:
        return 1.0 if x == term.singleton else 0.0
    xs = [p[0] for p in term.points]
    ys = [p[1] for p in term.points]
    return float(np.interp(x, xs, ys))


def membership_grid(term: Term, grid: np.ndarray) -> np.ndarray:
    xs = [p[0] for p in term.points]
    ys = [p[1] for p in term.points]
    return np.interp(grid, xs, ys)


def output_grid(output: OutputVariable) -> np.ndarray:
    lo, hi = output.range
    return np.linspace(lo, hi, COG_INTERVALS + 1)


def _trapezoid_weights(n: int) -> np.ndarray:
    weights = np.ones(n)
    weights[0] = weights[-1] = 0.5
    return weights


def defuzzify_grid(grid: np.ndarray, mu: np.ndarray, method: str,
                   default: float) -> float:
    """Crisp value of an aggregated membership sampled on ``grid``.

    COG integrates with trapezoidal weights; plain endpoint sums would
    overweight the range edges where shoulder terms stay high.
    """
    if method == "COG":
        weights = _trapezoid_weights(grid.size)
        mass = float((mu * weights).sum())
        if mass <= 0.0:
            return default
        return float((mu * weights * grid).sum() / mass)
    if method == "MOM":
        peak = float(mu.max(initial=0.0))
        if peak <= 0.0:
            return default
        return float(grid[mu >= peak - MOM_EPS].mean())
    raise ValueError(f"grid defuzzification does not handle {method!r}")


def defuzzify_singletons(pairs: list[tuple[float, float]], default: float) -> float:
    """Weighted mean of (position, activation) singletons."""
    total = sum(mu for _, mu in pairs)
    if total <= 0.0:
        return default
    return sum(x * mu for x, mu in pairs) / total


def _truth(node, values: dict[str, float], system: FuzzySystem, and_op: str) -> float:
    if isinstance(node, Condition):
        term = system.inputs[node.variable].terms[node.term]
        mu = membership(term, values[node.variable])
        return 1.0 - mu if node.negated else mu
    left = _truth(node.left, values, system, and_op)
    right = _truth(node.right, values, system, and_op)
    if node.op == "AND":
        return min(left, right) if and_op == "MIN" else left * right
    # OR is the De Morgan dual of the configured AND
    return max(left, right) if and_op == "MIN" else left + right - left * right


def _check_inputs(system: FuzzySystem, inputs: dict[str, float]):
    missing = sorted(set(system.inputs) - set(inputs))
    if missing:
        raise MissingInput(f"missing input values: {', '.join(missing)}")
    unknown = sorted(set(inputs) - set(system.inputs))
    if unknown:
        raise UnknownVariable(f"not declared as inputs: {', '.join(unknown)}")
    for name, value in inputs.items():
        if not math.isfinite(value):
            raise NonFiniteInput(f"input {name!r} is {value!r}")


def infer(system: FuzzySystem,
          inputs: dict[str, float]) -> tuple[dict[str, float], InferenceTrace]:
    """Run one inference; returns crisp outputs and the full trace.

    Every rule appears in the trace with its antecedent degree, including
    rules that did not fire.  Outputs no firing rule touches — and outputs
    whose aggregate carries zero mass — return their DEFAULT and are
    listed in ``trace.defaulted``.
    """
    _check_inputs(system, inputs)
    values = {name: float(v) for name, v in inputs.items()}

    firings: list[RuleFiring] = []
    contributions: dict[str, list[tuple[Term, float, str]]] = {
        name: [] for name in system.outputs
    }
    for block, rule in system.iter_rules():
        degree = _truth(rule.antecedent, values, system, block.and_op)
        activation = degree * rule.weight
        firings.append(RuleFiring(
            block=block.name,
            rule_id=rule.id,
            degree=degree,
            activation=activation,
            consequents=tuple((c.variable, c.term) for c in rule.consequents),
        ))
        if activation > 0.0:
            for consequent in rule.consequents:
                term = system.outputs[consequent.variable].terms[consequent.term]
                contributions[consequent.variable].append(
                    (term, activation, block.act_op))

    outputs: dict[str, float] = {}
    defaulted: list[str] = []
    for name, out in system.outputs.items():
        contribs = contributions[name]
        if out.method == "COGS":
            strongest: dict[str, tuple[float, float]] = {}
            for term, activation, _act in contribs:
                pos = term.singleton
                prev = strongest.get(term.name)
                if prev is None or activation > prev[1]:
                    strongest[term.name] = (pos, activation)
            crisp = defuzzify_singletons(list(strongest.values()), out.default)
            used_default = not strongest or all(
                mu <= 0.0 for _, mu in strongest.values())
        else:
            grid = output_grid(out)
            agg = np.zeros(grid.size)
            for term, activation, act in contribs:
                mu = membership_grid(term, grid)
                shaped = np.minimum(mu, activation) if act == "MIN" else mu * activation
                np.maximum(agg, shaped, out=agg)
            crisp = defuzzify_grid(grid, agg, out.method, out.default)
            used_default = float(agg.sum()) <= 0.0
        if out.range is not None:
            crisp = min(max(crisp, out.range[0]), out.range[1])
        outputs[name] = crisp
        if used_default:
            defaulted.append(name)

    trace = InferenceTrace(outputs=dict(outputs), firings=firings,
                           defaulted=tuple(defaulted))
    return outputs, trace


def term_centroid(term: Term, rng: tuple[float, float]) -> float:
    """Centroid of a term's own (unclipped) membership over ``rng``."""
    if term.is_singleton:
        return float(term.singleton)
    grid = np.linspace(rng[0], rng[1], COG_INTERVALS + 1)
    mu = membership_grid(term, grid)
    weights = _trapezoid_weights(grid.size)
    mass = float((mu * weights).sum())
    if mass <= 0.0:
        return 0.5 * (rng[0] + rng[1])
    return float((mu * weights * grid).sum() / mass)
