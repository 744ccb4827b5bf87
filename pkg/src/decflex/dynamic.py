"""Two-stage commit-then-revise model and the value of keeping a decision open.

A commitment fixes an initial action now. Soft commitments buy an evidence
report and may later switch to one of their revision targets, paying a
switching cost; hard commitments never revise. The net value of ending on
action ``r`` is the base payoff of ``r`` minus whichever of those costs apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from decflex.bayes import EvidenceModel, posterior, preposterior
from decflex.errors import (
    IllegalRevisionError,
    InvalidModelError,
    MismatchedStatesError,
    UnknownLabelError,
)
from decflex.model import DecisionModel, Distribution, check_model, payoff

TOL = 1e-9


@dataclass(frozen=True)
class Commitment:
    label: str
    initial_action: str
    revision_targets: tuple[str, ...] = ()
    switch_cost: float = 0.0
    observes_evidence: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "revision_targets", tuple(self.revision_targets))
        object.__setattr__(self, "switch_cost", float(self.switch_cost))
        if not self.label:
            raise InvalidModelError("commitment: empty label")
        if self.switch_cost < 0 or math.isnan(self.switch_cost):
            raise InvalidModelError(f"commitment {self.label!r}: switch_cost must be >= 0")
        if self.revision_targets and not self.observes_evidence:
            raise InvalidModelError(
                f"commitment {self.label!r}: revision targets require observes_evidence"
            )
        if self.initial_action in self.revision_targets:
            raise InvalidModelError(
                f"commitment {self.label!r}: initial action listed as a revision target"
            )
        if len(set(self.revision_targets)) != len(self.revision_targets):
            raise InvalidModelError(f"commitment {self.label!r}: duplicate revision targets")

    @classmethod
    def hard(cls, action: str, label: str | None = None) -> Commitment:
        return cls(label or action, action)

    @property
    def is_soft(self) -> bool:
        return bool(self.revision_targets)


@dataclass(frozen=True)
class TwoStageModel:
    base: DecisionModel
    prior: Distribution
    evidence: EvidenceModel
    commitments: tuple[Commitment, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "commitments", tuple(self.commitments))
        check_model(self.base)
        if self.prior.states != self.base.states:
            raise MismatchedStatesError("two-stage prior does not match the model states")
        if self.evidence.states != self.base.states:
            raise MismatchedStatesError("evidence model does not match the model states")
        if not self.commitments:
            raise InvalidModelError("two-stage model needs at least one commitment")
        labels = [c.label for c in self.commitments]
        if len(set(labels)) != len(labels):
            raise InvalidModelError("duplicate commitment labels")
        for c in self.commitments:
            for a in (c.initial_action, *c.revision_targets):
                if a not in self.base.alternatives:
                    raise InvalidModelError(
                        f"commitment {c.label!r} names unknown alternative {a!r}"
                    )

    def commitment(self, label: str) -> Commitment:
        for c in self.commitments:
            if c.label == label:
                return c
        raise UnknownLabelError("commitment", label)

    def options(self, c: Commitment) -> tuple[str, ...]:
        """Final actions open to ``c``, in model declaration order."""
        allowed = {c.initial_action, *c.revision_targets}
        return tuple(d for d in self.base.alternatives if d in allowed)


class Revision(NamedTuple):
    action: str
    value: float


@dataclass(frozen=True)
class PolicyRow:
    """Best final action after one evidence outcome.

    ``evidence`` is None for commitments that never look at the report;
    zero-probability outcomes carry ``action=None`` and contribute nothing.
    """

    evidence: str | None
    probability: float
    action: str | None
    value: float


@dataclass(frozen=True)
class PolicyReport:
    commitment: str
    rows: tuple[PolicyRow, ...]
    value_with_flexibility: float
    baseline: float
    flexibility_value: float


def _resolve(ts: TwoStageModel, c: Commitment | str) -> Commitment:
    return ts.commitment(c) if isinstance(c, str) else c


def net_value(ts: TwoStageModel, c: Commitment | str, r: str, dist: Distribution) -> float:
    c = _resolve(ts, c)
    if r != c.initial_action and r not in c.revision_targets:
        raise IllegalRevisionError(f"commitment {c.label!r} cannot end on {r!r}")
    if dist.states != ts.base.states:
        raise MismatchedStatesError("distribution does not match the model states")
    value = math.fsum(p * payoff(ts.base, r, x) for x, p in zip(dist.states, dist.probs))
    if c.observes_evidence:
        value -= ts.evidence.info_cost
    if r != c.initial_action:
        value -= c.switch_cost
    return value


def revision_policy(ts: TwoStageModel, c: Commitment | str, e: str) -> Revision:
    c = _resolve(ts, c)
    if not c.observes_evidence:
        raise IllegalRevisionError(f"commitment {c.label!r} never sees the evidence")
    post = posterior(ts.prior, ts.evidence, e)
    best: Revision | None = None
    for r in ts.options(c):
        v = net_value(ts, c, r, post)
        if best is None or v > best.value:
            best = Revision(r, v)
    assert best is not None
    return best


def _rows(ts: TwoStageModel, c: Commitment) -> tuple[PolicyRow, ...]:
    if not c.observes_evidence:
        return (PolicyRow(None, 1.0, c.initial_action, net_value(ts, c, c.initial_action, ts.prior)),)
    rows = []
    for e, pe in preposterior(ts.prior, ts.evidence).items():
        if pe <= 0.0:
            rows.append(PolicyRow(e, 0.0, None, 0.0))
            continue
        action, value = revision_policy(ts, c, e)
        rows.append(PolicyRow(e, pe, action, value))
    return tuple(rows)


def value_with_flexibility(ts: TwoStageModel, c: Commitment | str) -> float:
    rows = _rows(ts, _resolve(ts, c))
    return math.fsum(row.probability * row.value for row in rows)


def baseline_value(ts: TwoStageModel) -> float:
    """Best value of simply carrying out some commitment's initial action, no report bought."""
    return max(
        math.fsum(p * payoff(ts.base, c.initial_action, x) for x, p in zip(ts.prior.states, ts.prior.probs))
        for c in ts.commitments
    )


def flexibility_value(ts: TwoStageModel, c: Commitment | str) -> PolicyReport:
    c = _resolve(ts, c)
    rows = _rows(ts, c)
    with_flex = math.fsum(row.probability * row.value for row in rows)
    base = baseline_value(ts)
    return PolicyReport(c.label, rows, with_flex, base, with_flex - base)


def flexibility_values(ts: TwoStageModel) -> list[PolicyReport]:
    return [flexibility_value(ts, c) for c in ts.commitments]


def most_flexible_commitment(ts: TwoStageModel) -> tuple[str, float] | None:
    """Commitment with the largest flexibility value, if that value is positive."""
    best: tuple[str, float] | None = None
    for report in flexibility_values(ts):
        if best is None or report.flexibility_value > best[1]:
            best = (report.commitment, report.flexibility_value)
    if best is None or best[1] <= TOL:
        return None
    return best


def hard_commitments(alternatives: Sequence[str]) -> list[Commitment]:
    return [Commitment.hard(d) for d in alternatives]
