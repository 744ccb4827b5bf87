"""Certainty-equivalent lines over the belief parameter and their upper envelope.

Every line here lives on the unit interval of the belief parameter ``p``. The
upper envelope is built with the usual convex-hull-of-lines sweep and then
clipped to ``[0, 1]``; integrals are exact antiderivatives, never sampled.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Sequence

from decflex.errors import (
    BadIntervalError,
    EmptyInputError,
    MismatchedStatesError,
    OutOfRangeError,
)
from decflex.model import BeliefFamily, DecisionModel, check_model, payoff

TOL = 1e-9
# breakpoints closer than this are merged; narrower segments are dropped
MERGE_EPS = 1e-12


@dataclass(frozen=True)
class Line:
    intercept: float
    slope: float
    label: str

    def __call__(self, p: float) -> float:
        return self.intercept + self.slope * p

    def shifted(self, amount: float, label: str | None = None) -> Line:
        return Line(self.intercept + amount, self.slope, self.label if label is None else label)


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    line: Line


@dataclass(frozen=True)
class Envelope:
    """Upper envelope on [0, 1]; ``lines`` keeps every input line for tie reporting."""

    segments: tuple[Segment, ...]
    lines: tuple[Line, ...]

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(s.hi for s in self.segments[:-1])

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.line.label for s in self.segments)

    def __call__(self, p: float) -> float:
        return evaluate_envelope(self, p)[0]


def ce_line(model: DecisionModel, family: BeliefFamily, d: str) -> Line:
    """Expected payoff of ``d`` as a linear function of the belief parameter."""
    check_model(model)
    if family.states != model.states:
        raise MismatchedStatesError("belief family states do not match the model")
    row = [payoff(model, d, x) for x in model.states]
    at0 = math.fsum(w * v for w, v in zip(family.endpoint0.probs, row))
    at1 = math.fsum(w * v for w, v in zip(family.endpoint1.probs, row))
    return Line(at0, at1 - at0, d)


def ce_lines(model: DecisionModel, family: BeliefFamily) -> list[Line]:
    return [ce_line(model, family, d) for d in model.alternatives]


def _hull(lines: Sequence[Line]) -> list[Line]:
    """Lines of the upper envelope over the whole real axis, by increasing slope."""
    indexed = list(enumerate(lines))
    # by slope, then the higher intercept first, then declaration order
    indexed.sort(key=lambda il: (il[1].slope, -il[1].intercept, il[0]))
    deduped: list[Line] = []
    for _, line in indexed:
        if deduped and deduped[-1].slope == line.slope:
            continue  # parallel and not higher: never strictly on top
        deduped.append(line)

    stack: list[Line] = []
    for l3 in deduped:
        while len(stack) >= 2:
            l1, l2 = stack[-2], stack[-1]
            # l2 is useless if l3 overtakes l1 no later than l2 does
            if (l3.intercept - l1.intercept) * (l2.slope - l1.slope) >= (
                l2.intercept - l1.intercept
            ) * (l3.slope - l1.slope):
                stack.pop()
            else:
                break
        stack.append(l3)
    return stack


def _crossing(a: Line, b: Line) -> float:
    return (a.intercept - b.intercept) / (b.slope - a.slope)


def upper_envelope(lines: Sequence[Line]) -> Envelope:
    """Pointwise maximum of ``lines`` on [0, 1] as a list of segments.

    Lines that are on top only at isolated points do not get a segment.
    Identical lines collapse to the one declared first.
    """
    lines = tuple(lines)
    if not lines:
        raise EmptyInputError("upper envelope of no lines")
    hull = _hull(lines)

    pieces: list[tuple[float, float, Line]] = []
    for k, line in enumerate(hull):
        lo = -math.inf if k == 0 else _crossing(hull[k - 1], line)
        hi = math.inf if k == len(hull) - 1 else _crossing(line, hull[k + 1])
        lo, hi = max(lo, 0.0), min(hi, 1.0)
        if hi - lo > MERGE_EPS:
            pieces.append((lo, hi, line))

    segments: list[Segment] = []
    for lo, hi, line in pieces:
        if segments:
            lo = segments[-1].hi
        segments.append(Segment(lo, hi, line))
    first, last = segments[0], segments[-1]
    segments[0] = Segment(0.0, first.hi, first.line)
    segments[-1] = Segment(segments[-1].lo, 1.0, last.line)
    return Envelope(tuple(segments), lines)


def _check_p(p: float) -> None:
    if not (0.0 <= p <= 1.0):
        raise OutOfRangeError(f"belief parameter {p!r} is outside [0, 1]")


def evaluate_envelope(env: Envelope, p: float) -> tuple[float, tuple[str, ...]]:
    """Envelope value at ``p`` and every input label within TOL of it."""
    _check_p(p)
    his = [s.hi for s in env.segments]
    k = min(bisect.bisect_left(his, p), len(env.segments) - 1)
    value = env.segments[k].line(p)
    active: list[str] = []
    for line in env.lines:
        if abs(line(p) - value) <= TOL and line.label not in active:
            active.append(line.label)
    return value, tuple(active)


def _check_interval(lo: float, hi: float) -> None:
    if not (0.0 <= lo <= hi <= 1.0):
        raise BadIntervalError(f"interval [{lo!r}, {hi!r}] is not inside [0, 1] in order")


def integrate_line(line: Line, lo: float, hi: float) -> float:
    _check_interval(lo, hi)
    return line.intercept * (hi - lo) + line.slope * (hi * hi - lo * lo) / 2.0


def integrate_envelope(env: Envelope, lo: float, hi: float) -> float:
    _check_interval(lo, hi)
    parts = []
    for s in env.segments:
        a, b = max(s.lo, lo), min(s.hi, hi)
        if b > a:
            parts.append(integrate_line(s.line, a, b))
    return math.fsum(parts)
