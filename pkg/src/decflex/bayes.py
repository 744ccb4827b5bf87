"""Posterior and preposterior for a finite evidence variable."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from decflex.errors import (
    InvalidModelError,
    MismatchedStatesError,
    UnknownLabelError,
    ZeroProbabilityEvidenceError,
)
from decflex.model import Distribution

TOL = 1e-9
ZERO_EVIDENCE = 1e-15


@dataclass(frozen=True)
class EvidenceModel:
    """Likelihood table P(e | x) plus the price of observing e.

    ``likelihood`` is keyed by ``(evidence, state)``; for each state the
    entries must sum to one over the evidence outcomes.
    """

    states: tuple[str, ...]
    outcomes: tuple[str, ...]
    likelihood: Mapping[tuple[str, str], float] = field(compare=False)
    info_cost: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        object.__setattr__(self, "likelihood", MappingProxyType(dict(self.likelihood)))
        object.__setattr__(self, "info_cost", float(self.info_cost))
        if not self.outcomes:
            raise InvalidModelError("evidence: no outcomes declared")
        if len(set(self.outcomes)) != len(self.outcomes):
            raise InvalidModelError("evidence: duplicate outcome labels")
        if not math.isfinite(self.info_cost) or self.info_cost < 0:
            raise InvalidModelError(f"evidence: info_cost must be >= 0, got {self.info_cost!r}")
        for x in self.states:
            column = []
            for e in self.outcomes:
                if (e, x) not in self.likelihood:
                    raise InvalidModelError(f"evidence: missing likelihood P({e!r} | {x!r})")
                q = self.likelihood[(e, x)]
                if not math.isfinite(q) or not 0.0 <= q <= 1.0:
                    raise InvalidModelError(f"evidence: P({e!r} | {x!r}) = {q!r} is not in [0, 1]")
                column.append(q)
            total = math.fsum(column)
            if abs(total - 1.0) > TOL:
                raise InvalidModelError(
                    f"evidence: likelihoods given state {x!r} sum to {total!r}, not 1"
                )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EvidenceModel):
            return NotImplemented
        return (
            self.states == other.states
            and self.outcomes == other.outcomes
            and dict(self.likelihood) == dict(other.likelihood)
            and self.info_cost == other.info_cost
        )

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_rows(
        cls,
        states: Sequence[str],
        outcomes: Sequence[str],
        rows: Sequence[Sequence[float]],
        info_cost: float = 0.0,
    ) -> EvidenceModel:
        """One row per state, one column per evidence outcome."""
        table = {}
        for x, row in zip(states, rows):
            for e, q in zip(outcomes, row):
                table[(e, x)] = float(q)
        return cls(tuple(states), tuple(outcomes), table, info_cost)

    @classmethod
    def symmetric(
        cls, states: Sequence[str], outcomes: Sequence[str], accuracy: float, info_cost: float = 0.0
    ) -> EvidenceModel:
        """Report i names state i with probability ``accuracy``; errors spread evenly."""
        n = len(states)
        if len(outcomes) != n:
            raise InvalidModelError("symmetric evidence needs one outcome per state")
        miss = (1.0 - accuracy) / (n - 1) if n > 1 else 0.0
        rows = [[accuracy if i == j else miss for j in range(n)] for i in range(n)]
        return cls.from_rows(states, outcomes, rows, info_cost)


def _check(prior: Distribution, ev: EvidenceModel) -> None:
    if prior.states != ev.states:
        raise MismatchedStatesError("prior and evidence model have different state lists")


def evidence_probability(prior: Distribution, ev: EvidenceModel, e: str) -> float:
    _check(prior, ev)
    if e not in ev.outcomes:
        raise UnknownLabelError("evidence", e)
    return math.fsum(ev.likelihood[(e, x)] * p for x, p in zip(prior.states, prior.probs))


def preposterior(prior: Distribution, ev: EvidenceModel) -> dict[str, float]:
    return {e: evidence_probability(prior, ev, e) for e in ev.outcomes}


def posterior(prior: Distribution, ev: EvidenceModel, e: str) -> Distribution:
    pe = evidence_probability(prior, ev, e)
    if pe <= ZERO_EVIDENCE:
        raise ZeroProbabilityEvidenceError(f"evidence {e!r} has probability {pe!r} under the prior")
    return Distribution(
        prior.states, tuple(ev.likelihood[(e, x)] * p / pe for x, p in zip(prior.states, prior.probs))
    )
