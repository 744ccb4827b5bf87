"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 invalid model, 4 computation error.
Failures print a single JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from decflex import oracle
from decflex.dynamic import (
    flexibility_value,
    flexibility_values,
    most_flexible_commitment,
)
from decflex.envelope import ce_lines, evaluate_envelope, integrate_envelope, upper_envelope
from decflex.errors import FlexError, InvalidModelError, UnknownLabelError
from decflex.model import distribution_at
from decflex.modelfile import ParsedModel, read_model
from decflex.report import FlexSummary, Verification, render_report
from decflex.static import brittleness, meu
from decflex.svg import LAYERS, PlotOptions, render_svg

VERIFY_TOL = 1e-6
VERIFY_PANELS = 100_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"{p!r} is outside [0, 1]")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--model", required=True, metavar="FILE", help="JSON model document")
    common.add_argument("--p", type=_probability, default=None, metavar="VALUE",
                        help="override the document's belief parameter")
    common.add_argument("--verify", action="store_true", help="cross-check against brute-force oracles")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = _Parser(prog="decflex", description="Decision flexibility analysis.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("meu", parents=[common], help="best alternative at the belief parameter")
    sub.add_parser("envelope", parents=[common], help="upper envelope of certainty-equivalent lines")
    b = sub.add_parser("brittleness", parents=[common], help="brittleness of every alternative")
    b.add_argument("--def", dest="definition", choices=("outcomes", "belief", "clairvoyance"), default="belief")
    f = sub.add_parser("flexvalue", parents=[common], help="flexibility value of commitments")
    f.add_argument("--commitment", metavar="LABEL", default=None)
    pl = sub.add_parser("plot", parents=[common], help="SVG plot of the geometry")
    pl.add_argument("--layers", default="ce,envelope", help=f"comma-separated subset of {','.join(LAYERS)}")
    pl.add_argument("--shade", metavar="ALTERNATIVE", default=None,
                    help="shade the brittleness region of one alternative")
    pl.add_argument("--out", required=True, metavar="FILE")
    sub.add_parser("show", parents=[common], help="print the parsed model (json re-parses)")
    return parser


def _verify_meu(parsed: ParsedModel, value: float) -> Verification:
    ev = oracle.expected_values(parsed.model, parsed.family, np.array([parsed.p]))
    return Verification({"meu": abs(float(ev.max()) - value)}, VERIFY_TOL)


def _verify_envelope(parsed: ParsedModel, env) -> Verification:
    grid = np.linspace(0.0, 1.0, 1001)
    brute = oracle.meu_curve(parsed.model, parsed.family)(grid)
    pointwise = max(abs(evaluate_envelope(env, float(p))[0] - b) for p, b in zip(grid, brute))
    quad = oracle.quadrature(oracle.meu_curve(parsed.model, parsed.family), 0.0, 1.0,
                             oracle.QuadratureSpec(VERIFY_PANELS))
    return Verification(
        {"pointwise": pointwise, "integral": abs(quad - integrate_envelope(env, 0.0, 1.0))}, VERIFY_TOL
    )


def _verify_brittleness(parsed: ParsedModel, report) -> Verification:
    if report.definition == "outcomes":
        dist = distribution_at(parsed.family, parsed.p)
        v = np.array([[parsed.model.payoffs[(d, x)] for x in parsed.model.states] for d in parsed.model.alternatives])
        probs = np.array(dist.probs)
        brute = (v.max(axis=0) - v) @ probs
    else:
        q = oracle.quadrature_brittleness(parsed.model, parsed.family, report.definition,
                                          oracle.QuadratureSpec(VERIFY_PANELS))
        brute = np.array([q[d] for d in parsed.model.alternatives])
    devs = {d: abs(report.values[d] - float(b)) for d, b in zip(parsed.model.alternatives, brute)}
    return Verification(devs, VERIFY_TOL)


def _verify_flex(parsed: ParsedModel, reports) -> Verification:
    best = oracle.best_plans(parsed.two_stage)
    return Verification(
        {r.commitment: abs(best[r.commitment][1] - r.value_with_flexibility) for r in reports}, VERIFY_TOL
    )


def run(args: argparse.Namespace, out) -> int:
    parsed = read_model(args.model, args.p)
    verification = None
    if args.command == "meu":
        result = meu(parsed.model, distribution_at(parsed.family, parsed.p))
        if args.verify:
            verification = _verify_meu(parsed, result.value)
    elif args.command == "envelope":
        result = upper_envelope(ce_lines(parsed.model, parsed.family))
        if args.verify:
            verification = _verify_envelope(parsed, result)
    elif args.command == "brittleness":
        dist = distribution_at(parsed.family, parsed.p)
        result = brittleness(parsed.model, parsed.family, args.definition, dist)
        if args.verify:
            verification = _verify_brittleness(parsed, result)
    elif args.command == "flexvalue":
        ts = parsed.two_stage
        if ts is None:
            raise InvalidModelError("model has no evidence/commitments section")
        if args.commitment is not None:
            result = flexibility_value(ts, args.commitment)
            reports = [result]
        else:
            reports = flexibility_values(ts)
            result = FlexSummary(tuple(reports), most_flexible_commitment(ts))
        if args.verify:
            verification = _verify_flex(parsed, reports)
    elif args.command == "plot":
        layers = frozenset(s.strip() for s in args.layers.split(",") if s.strip())
        bad = layers - set(LAYERS)
        if bad:
            raise UsageError(f"unknown layers {sorted(bad)}; choose from {','.join(LAYERS)}")
        options = PlotOptions(layers=layers, shade=args.shade, prior=parsed.p, two_stage=parsed.two_stage)
        svg = render_svg(parsed.model, parsed.family, options)
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
        out.write(f"wrote {args.out}\n" if args.format == "text" else json.dumps({"out": args.out}) + "\n")
        return 0
    else:  # show
        result = parsed
    out.write(render_report(result, args.format, verification))
    if verification is not None and not verification.passed:
        return 4
    return 0


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "exit_code": code, "message": message}) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return run(args, sys.stdout)
    except UsageError as exc:
        return _fail(2, "usage", str(exc))
    except OSError as exc:
        return _fail(2, "io", f"{exc.strerror}: {exc.filename}")
    except UnknownLabelError as exc:
        return _fail(2, "unknown-label", str(exc))
    except InvalidModelError as exc:
        return _fail(3, type(exc).__name__, str(exc))
    except FlexError as exc:
        return _fail(4, type(exc).__name__, str(exc))


if __name__ == "__main__":
    sys.exit(main())
