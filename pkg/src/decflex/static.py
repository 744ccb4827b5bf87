"""MEU choice and the three static brittleness measures.

Brittleness is a regret: how far an alternative falls below the best
achievable value, averaged either over outcomes (at a fixed belief), over a
uniform belief parameter, or against a free clairvoyant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from decflex.envelope import (
    Envelope,
    Line,
    ce_lines,
    integrate_envelope,
    integrate_line,
    upper_envelope,
)
from decflex.errors import MissingDistributionError
from decflex.model import (
    BeliefFamily,
    DecisionModel,
    Distribution,
    check_model,
    expected_payoff,
    payoff,
    require_same_states,
)

TOL = 1e-9
DEFINITIONS = ("outcomes", "belief", "clairvoyance")


class Choice(NamedTuple):
    best: tuple[str, ...]
    value: float


@dataclass(frozen=True)
class BrittlenessReport:
    definition: str
    values: Mapping[str, float]
    least_brittle: tuple[str, ...]

    def ranking(self) -> list[tuple[str, float]]:
        """Ascending by value; ties keep declaration order (sort is stable)."""
        return sorted(self.values.items(), key=lambda kv: kv[1])


def _argset(values: Mapping[str, float], target: float) -> tuple[str, ...]:
    return tuple(d for d, v in values.items() if abs(v - target) <= TOL)


def _report(definition: str, values: dict[str, float]) -> BrittlenessReport:
    return BrittlenessReport(definition, values, _argset(values, min(values.values())))


def meu(model: DecisionModel, dist: Distribution) -> Choice:
    check_model(model)
    require_same_states(model, dist)
    ev = {d: expected_payoff(model, d, dist) for d in model.alternatives}
    best = max(ev.values())
    return Choice(_argset(ev, best), best)


def _column_max(model: DecisionModel, x: str) -> float:
    return max(payoff(model, d, x) for d in model.alternatives)


def brittleness_outcomes(model: DecisionModel, dist: Distribution) -> BrittlenessReport:
    check_model(model)
    require_same_states(model, dist)
    best = {x: _column_max(model, x) for x in model.states}
    values = {
        d: math.fsum(p * (best[x] - payoff(model, d, x)) for x, p in zip(dist.states, dist.probs))
        for d in model.alternatives
    }
    return _report("outcomes", values)


def belief_envelope(model: DecisionModel, family: BeliefFamily) -> Envelope:
    return upper_envelope(ce_lines(model, family))


def brittleness_belief(model: DecisionModel, family: BeliefFamily) -> BrittlenessReport:
    """Mean shortfall below the envelope with the belief parameter uniform on [0, 1]."""
    lines = ce_lines(model, family)
    total = integrate_envelope(upper_envelope(lines), 0.0, 1.0)
    values = {line.label: total - integrate_line(line, 0.0, 1.0) for line in lines}
    return _report("belief", values)


def clairvoyance_line(model: DecisionModel, family: BeliefFamily) -> Line:
    """Expected value with the state revealed before acting, as a line in p."""
    check_model(model)
    require_same_states(model, family.endpoint0)
    best = [_column_max(model, x) for x in model.states]
    at0 = math.fsum(w * v for w, v in zip(family.endpoint0.probs, best))
    at1 = math.fsum(w * v for w, v in zip(family.endpoint1.probs, best))
    return Line(at0, at1 - at0, "clairvoyance")


def brittleness_clairvoyance(model: DecisionModel, family: BeliefFamily) -> BrittlenessReport:
    clair = integrate_line(clairvoyance_line(model, family), 0.0, 1.0)
    values = {line.label: clair - integrate_line(line, 0.0, 1.0) for line in ce_lines(model, family)}
    return _report("clairvoyance", values)


def brittleness(
    model: DecisionModel,
    family: BeliefFamily,
    definition: str,
    dist: Distribution | None = None,
) -> BrittlenessReport:
    if definition == "outcomes":
        if dist is None:
            raise MissingDistributionError("brittleness over outcomes needs a distribution")
        return brittleness_outcomes(model, dist)
    if definition == "belief":
        return brittleness_belief(model, family)
    if definition == "clairvoyance":
        return brittleness_clairvoyance(model, family)
    raise ValueError(f"unknown brittleness definition {definition!r}; expected one of {DEFINITIONS}")


def flexibility_ranking(
    model: DecisionModel,
    family: BeliefFamily,
    definition: str,
    dist: Distribution | None = None,
) -> list[tuple[str, float]]:
    return brittleness(model, family, definition, dist).ranking()
