"""Static decision models and one-parameter belief families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from decflex.errors import (
    InvalidModelError,
    MismatchedStatesError,
    OutOfRangeError,
    UnknownLabelError,
)

TOL = 1e-9
# slack for probabilities that drift past [0, 1] by rounding alone
_PROB_SLACK = 1e-12


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class DecisionModel:
    """Finite alternatives by finite states with a money payoff table.

    Construction never raises; call :func:`validate_model` (or
    :func:`check_model`) to find out whether the table is usable.
    """

    states: tuple[str, ...]
    alternatives: tuple[str, ...]
    payoffs: Mapping[tuple[str, str], float] = field(compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "payoffs", MappingProxyType(dict(self.payoffs)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecisionModel):
            return NotImplemented
        return (
            self.states == other.states
            and self.alternatives == other.alternatives
            and dict(self.payoffs) == dict(other.payoffs)
        )

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_rows(
        cls,
        states: Sequence[str],
        alternatives: Sequence[str],
        rows: Sequence[Sequence[float]],
    ) -> DecisionModel:
        """Build a model from a payoff matrix, one row per alternative."""
        payoffs = {}
        for d, row in zip(alternatives, rows):
            for x, value in zip(states, row):
                payoffs[(d, x)] = float(value)
        return cls(tuple(states), tuple(alternatives), payoffs)

    def row(self, d: str) -> tuple[float, ...]:
        return tuple(payoff(self, d, x) for x in self.states)


def _duplicates(labels: Iterable[str]) -> list[str]:
    seen: set[str] = set()
    dups = []
    for label in labels:
        if label in seen and label not in dups:
            dups.append(label)
        seen.add(label)
    return dups


def validate_model(model: DecisionModel) -> list[Violation]:
    """Return every invariant violation of ``model``; an empty list means ok."""
    out: list[Violation] = []
    for kind, labels in (("state", model.states), ("alternative", model.alternatives)):
        if not labels:
            out.append(Violation("empty", f"no {kind}s declared"))
        for label in labels:
            if not isinstance(label, str) or not label:
                out.append(Violation("empty label", f"{kind} label {label!r}"))
        for label in _duplicates(labels):
            out.append(Violation("duplicate label", f"{kind} {label!r}"))

    for d in model.alternatives:
        for x in model.states:
            if (d, x) not in model.payoffs:
                out.append(Violation("incomplete payoff table", f"missing ({d!r}, {x!r})"))
                continue
            value = model.payoffs[(d, x)]
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
                out.append(Violation("non-finite payoff", f"({d!r}, {x!r}) = {value!r}"))
    states, alts = set(model.states), set(model.alternatives)
    for d, x in model.payoffs:
        if d not in alts or x not in states:
            out.append(Violation("stray payoff", f"({d!r}, {x!r}) names an undeclared label"))
    return out


def check_model(model: DecisionModel) -> None:
    violations = validate_model(model)
    if violations:
        raise InvalidModelError(
            "invalid decision model: " + "; ".join(map(str, violations)), violations
        )


def payoff(model: DecisionModel, d: str, x: str) -> float:
    if d not in model.alternatives:
        raise UnknownLabelError("alternative", d)
    if x not in model.states:
        raise UnknownLabelError("state", x)
    return model.payoffs[(d, x)]


@dataclass(frozen=True)
class Distribution:
    """Probability mass over an ordered state list."""

    states: tuple[str, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if len(self.states) != len(self.probs):
            raise InvalidModelError("distribution: states and probabilities differ in length")
        if not self.states:
            raise InvalidModelError("distribution: empty support")
        if _duplicates(self.states):
            raise InvalidModelError(f"distribution: duplicate states {_duplicates(self.states)}")
        for x, p in zip(self.states, self.probs):
            if not math.isfinite(p) or p < -_PROB_SLACK or p > 1 + _PROB_SLACK:
                raise InvalidModelError(f"distribution: P({x!r}) = {p!r} is not in [0, 1]")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > TOL:
            raise InvalidModelError(f"distribution: probabilities sum to {total!r}, not 1")

    @classmethod
    def from_mapping(cls, states: Sequence[str], weights: Mapping[str, float]) -> Distribution:
        """Missing states get weight 0; unknown keys are rejected."""
        extra = [k for k in weights if k not in states]
        if extra:
            raise UnknownLabelError("state", extra[0])
        return cls(tuple(states), tuple(float(weights.get(x, 0.0)) for x in states))

    @classmethod
    def point_mass(cls, states: Sequence[str], at: str) -> Distribution:
        if at not in states:
            raise UnknownLabelError("state", at)
        return cls(tuple(states), tuple(1.0 if x == at else 0.0 for x in states))

    @property
    def weights(self) -> dict[str, float]:
        return dict(zip(self.states, self.probs))

    def __getitem__(self, x: str) -> float:
        try:
            return self.probs[self.states.index(x)]
        except ValueError:
            raise UnknownLabelError("state", x) from None


def require_same_states(model: DecisionModel, dist: Distribution) -> None:
    if dist.states != model.states:
        raise MismatchedStatesError(
            f"distribution over {list(dist.states)} does not match model states {list(model.states)}"
        )


@dataclass(frozen=True)
class BeliefFamily:
    """Mixture family ``(1 - p) * endpoint0 + p * endpoint1`` for p in [0, 1]."""

    endpoint0: Distribution
    endpoint1: Distribution

    def __post_init__(self) -> None:
        if self.endpoint0.states != self.endpoint1.states:
            raise MismatchedStatesError("belief family endpoints have different state lists")

    @property
    def states(self) -> tuple[str, ...]:
        return self.endpoint0.states

    @classmethod
    def bernoulli(cls, states: Sequence[str], success_state: str) -> BeliefFamily:
        """Two-state family where p is the probability of ``success_state``."""
        states = tuple(states)
        if len(states) != 2:
            raise InvalidModelError(f"bernoulli family needs exactly 2 states, got {len(states)}")
        if success_state not in states:
            raise UnknownLabelError("state", success_state)
        failure = states[1] if states[0] == success_state else states[0]
        return cls(Distribution.point_mass(states, failure), Distribution.point_mass(states, success_state))


def distribution_at(family: BeliefFamily, p: float) -> Distribution:
    if not (0.0 <= p <= 1.0):
        raise OutOfRangeError(f"belief parameter {p!r} is outside [0, 1]")
    if p == 0.0:
        return family.endpoint0
    if p == 1.0:
        return family.endpoint1
    probs = tuple(
        (1.0 - p) * a + p * b for a, b in zip(family.endpoint0.probs, family.endpoint1.probs)
    )
    return Distribution(family.states, probs)


def expected_payoff(model: DecisionModel, d: str, dist: Distribution) -> float:
    return math.fsum(p * payoff(model, d, x) for x, p in zip(dist.states, dist.probs))
