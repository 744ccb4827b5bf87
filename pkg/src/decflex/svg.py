"""Standalone SVG plots of certainty-equivalent lines over the belief parameter.

Output is written by hand with fixed float precision so identical inputs
give byte-identical files.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from decflex.dynamic import TwoStageModel
from decflex.envelope import Envelope, Line, ce_lines, upper_envelope
from decflex.errors import UnknownLabelError
from decflex.model import BeliefFamily, DecisionModel
from decflex.oracle import enumerate_two_stage
from decflex.static import clairvoyance_line

LAYERS = ("ce", "envelope", "clairvoyance", "prior", "twostage")
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


@dataclass(frozen=True)
class PlotOptions:
    layers: frozenset[str] = frozenset({"ce", "envelope"})
    shade: str | None = None
    prior: float | None = None
    two_stage: TwoStageModel | None = field(default=None, compare=False)
    width: int = 640
    height: int = 420
    title: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "layers", frozenset(self.layers))
        unknown = self.layers - set(LAYERS)
        if unknown:
            raise ValueError(f"unknown plot layers {sorted(unknown)}; choose from {LAYERS}")


def _f(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def plan_lines(ts: TwoStageModel, family: BeliefFamily, commitment: str) -> list[Line]:
    """One line per contingency plan of ``commitment``, as the prior moves along ``family``."""
    at0 = enumerate_two_stage(dataclasses.replace(ts, prior=family.endpoint0))
    at1 = enumerate_two_stage(dataclasses.replace(ts, prior=family.endpoint1))
    lines = []
    for (label, plan), v0 in at0.items():
        if label == commitment:
            name = ",".join(f"{e}->{r}" for e, r in plan) or label
            lines.append(Line(v0, at1[(label, plan)] - v0, name))
    return lines


def baseline_envelope(ts: TwoStageModel, family: BeliefFamily) -> Envelope:
    by_label = {line.label: line for line in ce_lines(ts.base, family)}
    return upper_envelope([by_label[c.initial_action] for c in ts.commitments])


class _Canvas:
    def __init__(self, opts: PlotOptions, ymin: float, ymax: float) -> None:
        self.w, self.h = opts.width, opts.height
        self.left, self.right, self.top, self.bottom = 64, 130, 36, 48
        span = ymax - ymin
        pad = 0.05 * span if span > 0 else 1.0
        self.ymin, self.ymax = ymin - pad, ymax + pad
        self.items: list[str] = []

    def x(self, p: float) -> float:
        return self.left + p * (self.w - self.left - self.right)

    def y(self, v: float) -> float:
        frac = (v - self.ymin) / (self.ymax - self.ymin)
        return self.h - self.bottom - frac * (self.h - self.top - self.bottom)

    def add(self, item: str) -> None:
        self.items.append(item)

    def line(self, line: Line, cls: str, color: str, extra: str = "") -> None:
        self.add(
            f'<line class="{cls}" data-label="{escape(line.label)}" '
            f'x1="{_f(self.x(0))}" y1="{_f(self.y(line(0.0)))}" '
            f'x2="{_f(self.x(1))}" y2="{_f(self.y(line(1.0)))}" stroke="{color}"{extra}/>'
        )

    def label(self, p: float, v: float, content: str, color: str, anchor: str = "start") -> None:
        self.add(
            f'<text x="{_f(self.x(p) + (6 if anchor == "start" else 0))}" y="{_f(self.y(v) + 4)}" '
            f'fill="{color}" text-anchor="{anchor}">{escape(content)}</text>'
        )

    def points(self, pts: list[tuple[float, float]]) -> str:
        return " ".join(f"{_f(self.x(p))},{_f(self.y(v))}" for p, v in pts)


def _axes(c: _Canvas) -> None:
    x0, x1 = c.x(0), c.x(1)
    y0, y1 = c.h - c.bottom, c.top
    c.add(f'<g class="axes" stroke="#000000">')
    c.add(f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}"/>')
    c.add(f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x0)}" y2="{_f(y1)}"/>')
    c.add("</g>")
    for i in range(5):
        p = i / 4
        c.add(f'<line class="tick" x1="{_f(c.x(p))}" y1="{_f(y0)}" x2="{_f(c.x(p))}" y2="{_f(y0 + 5)}" stroke="#000000"/>')
        c.add(f'<text x="{_f(c.x(p))}" y="{_f(y0 + 18)}" text-anchor="middle">{p:.2f}</text>')
        v = c.ymin + i / 4 * (c.ymax - c.ymin)
        c.add(f'<line class="tick" x1="{_f(x0 - 5)}" y1="{_f(c.y(v))}" x2="{_f(x0)}" y2="{_f(c.y(v))}" stroke="#000000"/>')
        c.add(f'<text x="{_f(x0 - 8)}" y="{_f(c.y(v) + 4)}" text-anchor="end">{_f(v)}</text>')
    c.add(f'<text x="{_f((x0 + x1) / 2)}" y="{_f(c.h - 10)}" text-anchor="middle">belief parameter p</text>')
    c.add(
        f'<text x="16" y="{_f((y0 + y1) / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 16 {_f((y0 + y1) / 2)})">expected value</text>'
    )


def _envelope_vertices(env: Envelope, lo: float = 0.0, hi: float = 1.0) -> list[tuple[float, float]]:
    pts = []
    for s in env.segments:
        a, b = max(s.lo, lo), min(s.hi, hi)
        if b < a:
            continue
        if not pts:
            pts.append((a, s.line(a)))
        pts.append((b, s.line(b)))
    return pts


def _shade_regions(env: Envelope, target: Line) -> list[list[tuple[float, float]]]:
    """Polygons between the envelope and ``target`` where ``target`` is not on top."""
    runs: list[tuple[float, float]] = []
    for s in env.segments:
        if s.line.label == target.label:
            continue
        if runs and runs[-1][1] == s.lo:
            runs[-1] = (runs[-1][0], s.hi)
        else:
            runs.append((s.lo, s.hi))
    polys = []
    for a, b in runs:
        poly: list[tuple[float, float]] = []
        for pt in _envelope_vertices(env, a, b) + [(b, target(b)), (a, target(a))]:
            if not poly or pt != poly[-1]:
                poly.append(pt)
        polys.append(poly)
    return polys


def render_svg(model: DecisionModel, family: BeliefFamily, options: PlotOptions = PlotOptions()) -> str:
    lines = ce_lines(model, family)
    env = upper_envelope(lines)
    by_label = {line.label: line for line in lines}
    if options.shade is not None and options.shade not in by_label:
        raise UnknownLabelError("alternative", options.shade)
    color = {d: PALETTE[i % len(PALETTE)] for i, d in enumerate(model.alternatives)}
    layers = options.layers

    drawn: list[Line] = list(lines)
    clair = clairvoyance_line(model, family) if "clairvoyance" in layers else None
    if clair is not None:
        drawn.append(clair)
    ts = options.two_stage if "twostage" in layers else None
    soft_layers = []
    if ts is not None:
        base_env = baseline_envelope(ts, family)
        for c in ts.commitments:
            if not c.observes_evidence:
                continue
            shifted = []
            for r in ts.options(c):
                cost = ts.evidence.info_cost + (c.switch_cost if r != c.initial_action else 0.0)
                shifted.append(by_label[r].shifted(-cost, f"{r} - {cost:g}"))
            plans = upper_envelope(plan_lines(ts, family, c.label))
            soft_layers.append((c, shifted, plans))
            drawn += shifted + [s.line for s in plans.segments]

    ends = [v for line in drawn for v in (line(0.0), line(1.0))]
    c = _Canvas(options, min(ends), max(ends))
    _axes(c)

    if options.shade is not None:
        for poly in _shade_regions(env, by_label[options.shade]):
            c.add(
                f'<polygon class="brittleness" data-label="{escape(options.shade)}" '
                f'points="{c.points(poly)}" fill="{color[options.shade]}" fill-opacity="0.2" stroke="none"/>'
            )
    if "ce" in layers:
        for line in lines:
            c.line(line, "ce", color[line.label], ' stroke-width="1.5"')
            c.label(1.0, line(1.0), line.label, color[line.label])
    if "envelope" in layers:
        pts = _envelope_vertices(env)
        d = "M " + " L ".join(f"{_f(c.x(p))} {_f(c.y(v))}" for p, v in pts)
        c.add(f'<path class="envelope" d="{d}" fill="none" stroke="#000000" stroke-width="3" stroke-opacity="0.6"/>')
        for p, v in pts[1:-1]:
            c.add(f'<circle class="breakpoint" cx="{_f(c.x(p))}" cy="{_f(c.y(v))}" r="3" fill="#000000"/>')
    if clair is not None:
        c.line(clair, "clairvoyance", "#444444", ' stroke-dasharray="6,4" stroke-width="1.5"')
        c.label(1.0, clair(1.0), "clairvoyance", "#444444")
    if "prior" in layers and options.prior is not None:
        p0 = options.prior
        c.add(
            f'<line class="prior" x1="{_f(c.x(p0))}" y1="{_f(c.y(c.ymin))}" x2="{_f(c.x(p0))}" '
            f'y2="{_f(c.y(c.ymax))}" stroke="#777777" stroke-dasharray="2,3"/>'
        )
        c.add(f'<text x="{_f(c.x(p0))}" y="{_f(c.top - 8)}" text-anchor="middle">p0 = {p0:.3f}</text>')
    for commitment, shifted, plans in soft_layers:
        for line in shifted:
            c.line(line, "shifted", color[line.label.split(" - ")[0]], ' stroke-dasharray="1,3" stroke-width="1.5"')
        pts = _envelope_vertices(plans)
        d = "M " + " L ".join(f"{_f(c.x(p))} {_f(c.y(v))}" for p, v in pts)
        c.add(
            f'<path class="with-evidence" data-label="{escape(commitment.label)}" d="{d}" '
            f'fill="none" stroke="#000000" stroke-width="4"/>'
        )
        if options.prior is not None:
            p0 = options.prior
            top, bottom = plans(p0), base_env(p0)
            c.add(
                f'<line class="flexibility-gap" data-label="{escape(commitment.label)}" '
                f'x1="{_f(c.x(p0))}" y1="{_f(c.y(bottom))}" x2="{_f(c.x(p0))}" y2="{_f(c.y(top))}" '
                f'stroke="#000000" stroke-width="2"/>'
            )
            c.label(p0, (top + bottom) / 2, f"F = {_f(top - bottom)}", "#000000")

    title = options.title or "certainty equivalents"
    head = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{options.width}" height="{options.height}" '
        f'viewBox="0 0 {options.width} {options.height}" font-family="sans-serif" font-size="12">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{options.width}" height="{options.height}" fill="#ffffff"/>',
    ]
    return "\n".join(head + c.items + ["</svg>"]) + "\n"
