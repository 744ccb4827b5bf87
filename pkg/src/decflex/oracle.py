"""Brute-force cross-checks for the closed-form results.

Nothing here reuses the envelope or two-stage code paths: integrals are
estimated by composite quadrature on the raw payoff table, and two-stage
values by trying every contingency plan against the joint (evidence, state)
distribution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from decflex.dynamic import TwoStageModel
from decflex.errors import BadIntervalError, InvalidModelError, PolicyExplosionError
from decflex.model import BeliefFamily, DecisionModel

POLICY_CAP = 10**6


@dataclass(frozen=True)
class QuadratureSpec:
    panel_count: int = 10**6
    rule: str = "midpoint"

    def __post_init__(self) -> None:
        if self.panel_count < 1:
            raise ValueError("panel_count must be >= 1")
        if self.rule not in ("midpoint", "trapezoid"):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")


def _apply(f: Callable, xs: np.ndarray) -> np.ndarray:
    try:
        ys = np.asarray(f(xs), dtype=float)
        if ys.shape == xs.shape:
            return ys
    except (TypeError, ValueError):
        pass
    return np.array([float(f(float(x))) for x in xs])


def quadrature(f: Callable, lo: float, hi: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Composite midpoint or trapezoid estimate of the integral of ``f`` on [lo, hi].

    ``f`` may be vectorized over numpy arrays; scalar functions are evaluated
    point by point. For piecewise-linear ``f`` with slopes bounded by L the
    error is at most (hi - lo)**2 * L / panel_count.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise BadIntervalError(f"bad quadrature interval [{lo!r}, {hi!r}]")
    if lo == hi:
        return 0.0
    n = spec.panel_count
    h = (hi - lo) / n
    if spec.rule == "midpoint":
        ys = _apply(f, lo + (np.arange(n) + 0.5) * h)
        return h * math.fsum(ys)
    ys = _apply(f, np.linspace(lo, hi, n + 1))
    return h * (math.fsum(ys) - 0.5 * (ys[0] + ys[-1]))


def _tables(model: DecisionModel, family: BeliefFamily) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    v = np.array([[model.payoffs[(d, x)] for x in model.states] for d in model.alternatives])
    return v, np.array(family.endpoint0.probs), np.array(family.endpoint1.probs)


def expected_values(model: DecisionModel, family: BeliefFamily, ps: np.ndarray) -> np.ndarray:
    """Matrix of expected payoffs, one row per alternative, one column per p."""
    v, p0, p1 = _tables(model, family)
    probs = np.outer(p0, 1.0 - ps) + np.outer(p1, ps)
    return v @ probs


def meu_curve(model: DecisionModel, family: BeliefFamily) -> Callable[[np.ndarray], np.ndarray]:
    return lambda ps: expected_values(model, family, np.atleast_1d(ps)).max(axis=0)


def clairvoyance_curve(model: DecisionModel, family: BeliefFamily) -> Callable[[np.ndarray], np.ndarray]:
    v, p0, p1 = _tables(model, family)
    best = v.max(axis=0)
    return lambda ps: best @ (np.outer(p0, 1.0 - np.atleast_1d(ps)) + np.outer(p1, np.atleast_1d(ps)))


def quadrature_brittleness(
    model: DecisionModel,
    family: BeliefFamily,
    definition: str = "belief",
    spec: QuadratureSpec = QuadratureSpec(),
) -> dict[str, float]:
    """Belief or clairvoyance brittleness of each alternative by quadrature."""
    if definition not in ("belief", "clairvoyance"):
        raise ValueError(f"no quadrature oracle for {definition!r}")
    top = meu_curve(model, family) if definition == "belief" else clairvoyance_curve(model, family)
    out = {}
    for i, d in enumerate(model.alternatives):
        out[d] = quadrature(lambda ps, i=i: top(ps) - expected_values(model, family, ps)[i], 0.0, 1.0, spec)
    return out


def policy_count(ts: TwoStageModel) -> int:
    n_e = len(ts.evidence.outcomes)
    return sum(len(ts.options(c)) ** n_e if c.observes_evidence else 1 for c in ts.commitments)


def enumerate_two_stage(
    ts: TwoStageModel, cap: int = POLICY_CAP
) -> dict[tuple[str, tuple[tuple[str, str], ...]], float]:
    """Value of every (commitment, evidence -> final action) plan.

    Plans for commitments that never see the report are the empty tuple.
    """
    count = policy_count(ts)
    if count > cap:
        raise PolicyExplosionError(f"{count} contingency plans exceed the cap of {cap}")
    states, outcomes = ts.base.states, ts.evidence.outcomes
    prior = dict(zip(ts.prior.states, ts.prior.probs))
    v = ts.base.payoffs
    lik = ts.evidence.likelihood
    out = {}
    for c in ts.commitments:
        if not c.observes_evidence:
            out[(c.label, ())] = math.fsum(prior[x] * v[(c.initial_action, x)] for x in states)
            continue
        options = [c.initial_action, *c.revision_targets]
        for plan in itertools.product(options, repeat=len(outcomes)):
            terms = []
            for e, r in zip(outcomes, plan):
                cost = ts.evidence.info_cost + (c.switch_cost if r != c.initial_action else 0.0)
                for x in states:
                    joint = prior[x] * lik[(e, x)]
                    terms.append(joint * (v[(r, x)] - cost))
            out[(c.label, tuple(zip(outcomes, plan)))] = math.fsum(terms)
    return out


def best_plans(ts: TwoStageModel, cap: int = POLICY_CAP) -> dict[str, tuple[tuple[tuple[str, str], ...], float]]:
    """Best plan and its value for each commitment; first-enumerated plan wins ties."""
    best: dict[str, tuple[tuple[tuple[str, str], ...], float]] = {}
    for (label, plan), value in enumerate_two_stage(ts, cap).items():
        if label not in best or value > best[label][1]:
            best[label] = (plan, value)
    if not best:
        raise InvalidModelError("two-stage model has no commitments")
    return best
