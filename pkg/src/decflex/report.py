"""Text and JSON rendering of analysis results.

Text output rounds money to cents (half to even on the shortest decimal
repr of the float); JSON output keeps full precision. Both are byte-stable
for equal inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from functools import singledispatch
from typing import Any

from decflex.dynamic import PolicyReport
from decflex.envelope import Envelope
from decflex.modelfile import ParsedModel, to_document
from decflex.static import BrittlenessReport, Choice


def money(x: float) -> str:
    s = str(Decimal(repr(float(x))).quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN))
    return "0.00" if s == "-0.00" else s


def prob(x: float) -> str:
    s = str(Decimal(repr(float(x))).quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN))
    return "0.0000" if s == "-0.0000" else s


@dataclass(frozen=True)
class FlexSummary:
    reports: tuple[PolicyReport, ...]
    most_flexible: tuple[str, float] | None


@dataclass(frozen=True)
class Verification:
    deviations: dict[str, float]
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


@singledispatch
def structured(result: Any) -> Any:
    raise TypeError(f"no report format for {type(result).__name__}")


@singledispatch
def text(result: Any) -> list[str]:
    raise TypeError(f"no report format for {type(result).__name__}")


@structured.register
def _(result: Choice) -> dict:
    return {"best": list(result.best), "value": result.value}


@text.register
def _(result: Choice) -> list[str]:
    return [f"best: {', '.join(result.best)}", f"expected value: {money(result.value)}"]


@structured.register
def _(env: Envelope) -> dict:
    return {
        "breakpoints": list(env.breakpoints),
        "segments": [
            {
                "lo": s.lo,
                "hi": s.hi,
                "alternative": s.line.label,
                "intercept": s.line.intercept,
                "slope": s.line.slope,
            }
            for s in env.segments
        ],
    }


@text.register
def _(env: Envelope) -> list[str]:
    lines = [f"breakpoints: {', '.join(prob(b) for b in env.breakpoints) or 'none'}"]
    for s in env.segments:
        sign = "-" if s.line.slope < 0 else "+"
        lines.append(
            f"[{prob(s.lo)}, {prob(s.hi)}] {s.line.label}: "
            f"{money(s.line.intercept)} {sign} {money(abs(s.line.slope))}p"
        )
    return lines


@structured.register
def _(report: BrittlenessReport) -> dict:
    return {
        "definition": report.definition,
        "values": dict(report.values),
        "ranking": [[d, v] for d, v in report.ranking()],
        "least_brittle": list(report.least_brittle),
    }


@text.register
def _(report: BrittlenessReport) -> list[str]:
    lines = [f"brittleness ({report.definition})"]
    lines += [f"{d} {money(v)}" for d, v in report.ranking()]
    lines.append(f"least brittle: {', '.join(report.least_brittle)}")
    return lines


@structured.register
def _(report: PolicyReport) -> dict:
    return {
        "commitment": report.commitment,
        "rows": [
            {"evidence": r.evidence, "probability": r.probability, "action": r.action, "value": r.value}
            for r in report.rows
        ],
        "value_with_flexibility": report.value_with_flexibility,
        "baseline": report.baseline,
        "flexibility_value": report.flexibility_value,
    }


@text.register
def _(report: PolicyReport) -> list[str]:
    lines = [f"commitment: {report.commitment}"]
    for r in report.rows:
        evidence = "(no report)" if r.evidence is None else r.evidence
        action = "-" if r.action is None else r.action
        lines.append(f"  if {evidence} (p={prob(r.probability)}): {action} {money(r.value)}")
    lines += [
        f"value with flexibility: {money(report.value_with_flexibility)}",
        f"baseline: {money(report.baseline)}",
        f"flexibility value: {money(report.flexibility_value)}",
    ]
    return lines


@structured.register
def _(summary: FlexSummary) -> dict:
    best = summary.most_flexible
    return {
        "commitments": [structured(r) for r in summary.reports],
        "most_flexible": None if best is None else {"commitment": best[0], "flexibility_value": best[1]},
    }


@text.register
def _(summary: FlexSummary) -> list[str]:
    lines: list[str] = []
    for r in summary.reports:
        lines += text(r) + [""]
    best = summary.most_flexible
    lines.append("most flexible: " + ("none" if best is None else f"{best[0]} {money(best[1])}"))
    return lines


@structured.register
def _(parsed: ParsedModel) -> dict:
    return to_document(parsed)


@text.register
def _(parsed: ParsedModel) -> list[str]:
    model = parsed.model
    width = max(len(d) for d in model.alternatives)
    lines = ["states: " + ", ".join(model.states), f"belief parameter: {prob(parsed.p)}"]
    for d in model.alternatives:
        lines.append(f"{d.ljust(width)}  " + "  ".join(money(model.payoffs[(d, x)]) for x in model.states))
    if parsed.two_stage is not None:
        lines.append("commitments: " + ", ".join(c.label for c in parsed.two_stage.commitments))
    return lines


@structured.register
def _(v: Verification) -> dict:
    return {
        "deviations": dict(v.deviations),
        "max_deviation": v.max_deviation,
        "tolerance": v.tolerance,
        "passed": v.passed,
    }


@text.register
def _(v: Verification) -> list[str]:
    status = "ok" if v.passed else "FAILED"
    return [f"verify: max deviation {v.max_deviation:.3e} (tolerance {v.tolerance:.0e}) {status}"]


def render_report(result: Any, fmt: str = "text", verification: Verification | None = None) -> str:
    """Render one analysis result as a text or JSON document ending in a newline."""
    if fmt == "json":
        doc = structured(result)
        if verification is not None:
            doc = {**doc, "verify": structured(verification)}
        return json.dumps(doc, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = text(result)
    if verification is not None:
        lines = lines + text(verification)
    return "\n".join(lines) + "\n"
