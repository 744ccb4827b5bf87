"""JSON model documents.

A document looks like::

    {
      "states": ["sun", "rain"],
      "alternatives": ["outdoors", "porch", "indoors"],
      "payoffs": [[100, 0], [90, 20], [40, 50]],
      "belief": {"kind": "bernoulli", "success_state": "sun", "p": 0.8},
      "evidence": {
        "outcomes": ["sun", "rain"],
        "likelihood": {"sun": {"sun": 0.9, "rain": 0.1},
                       "rain": {"sun": 0.1, "rain": 0.9}},
        "info_cost": 1
      },
      "commitments": [
        {"label": "outdoors", "initial_action": "outdoors"},
        {"label": "porch-option", "initial_action": "porch",
         "revision_targets": ["outdoors", "indoors"], "switch_cost": 5,
         "observes_evidence": true}
      ]
    }

``payoffs`` is alternative-major: either a list of rows in declaration order
or a mapping ``alternative -> state -> value``. ``likelihood`` is
state-major: row ``x`` holds P(e | x) over the evidence outcomes, again as a
list of rows or a nested mapping. ``evidence`` and ``commitments`` go
together; a document with neither is a static model.
"""

from __future__ import annotations

import json
import math
from typing import Any, NamedTuple

from decflex.bayes import EvidenceModel
from decflex.dynamic import Commitment, TwoStageModel
from decflex.errors import DocumentSyntaxError, InvalidModelError, SchemaError
from decflex.model import (
    BeliefFamily,
    DecisionModel,
    Distribution,
    check_model,
    distribution_at,
)

TOL = 1e-9


class ParsedModel(NamedTuple):
    model: DecisionModel
    family: BeliefFamily
    two_stage: TwoStageModel | None
    p: float


def _is_number(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _number(v: Any, path: str) -> float:
    if not _is_number(v):
        raise SchemaError(path, f"expected a finite number, got {v!r}")
    return float(v)


def _require(doc: dict, key: str, path: str) -> Any:
    if key not in doc:
        raise SchemaError(f"{path}{key}", "required key is missing")
    return doc[key]


def _labels(v: Any, path: str) -> tuple[str, ...]:
    if not isinstance(v, list) or not v:
        raise SchemaError(path, "expected a non-empty list of labels")
    for i, item in enumerate(v):
        if not isinstance(item, str) or not item:
            raise SchemaError(f"{path}[{i}]", f"expected a non-empty string, got {item!r}")
    return tuple(v)


def _matrix(v: Any, rows: tuple[str, ...], cols: tuple[str, ...], path: str) -> dict[tuple[str, str], float]:
    """Read a rows-by-cols table given as a list of lists or a nested mapping."""
    out: dict[tuple[str, str], float] = {}
    if isinstance(v, list):
        if len(v) != len(rows):
            raise SchemaError(path, f"expected {len(rows)} rows, got {len(v)}")
        for i, (r, row) in enumerate(zip(rows, v)):
            if not isinstance(row, list) or len(row) != len(cols):
                raise SchemaError(f"{path}[{i}]", f"expected a list of {len(cols)} numbers")
            for j, (c, value) in enumerate(zip(cols, row)):
                out[(r, c)] = _number(value, f"{path}[{i}][{j}]")
        return out
    if isinstance(v, dict):
        for r, row in v.items():
            if r not in rows:
                raise SchemaError(f"{path}.{r}", "unknown row label")
            if not isinstance(row, dict):
                raise SchemaError(f"{path}.{r}", "expected a mapping")
            for c, value in row.items():
                if c not in cols:
                    raise SchemaError(f"{path}.{r}.{c}", "unknown column label")
                out[(r, c)] = _number(value, f"{path}.{r}.{c}")
        return out
    raise SchemaError(path, "expected a list of rows or a nested mapping")


def _distribution(v: Any, states: tuple[str, ...], path: str) -> Distribution:
    if not isinstance(v, dict):
        raise SchemaError(path, "expected a mapping state -> probability")
    weights = {}
    for x, q in v.items():
        if x not in states:
            raise SchemaError(f"{path}.{x}", "unknown state")
        weights[x] = _number(q, f"{path}.{x}")
    try:
        return Distribution.from_mapping(states, weights)
    except InvalidModelError as exc:
        raise SchemaError(path, str(exc)) from None


def _belief(v: Any, states: tuple[str, ...]) -> tuple[BeliefFamily, float]:
    if not isinstance(v, dict):
        raise SchemaError("belief", "expected a mapping")
    kind = _require(v, "kind", "belief.")
    p = _number(_require(v, "p", "belief."), "belief.p")
    if not 0.0 <= p <= 1.0:
        raise SchemaError("belief.p", f"{p!r} is outside [0, 1]")
    if kind == "bernoulli":
        success = _require(v, "success_state", "belief.")
        if success not in states:
            raise SchemaError("belief.success_state", f"unknown state {success!r}")
        if len(states) != 2:
            raise SchemaError("belief.kind", "bernoulli belief needs exactly two states")
        return BeliefFamily.bernoulli(states, success), p
    if kind == "mixture":
        e0 = _distribution(_require(v, "endpoint0", "belief."), states, "belief.endpoint0")
        e1 = _distribution(_require(v, "endpoint1", "belief."), states, "belief.endpoint1")
        return BeliefFamily(e0, e1), p
    raise SchemaError("belief.kind", f"expected 'bernoulli' or 'mixture', got {kind!r}")


def _evidence(v: Any, states: tuple[str, ...]) -> EvidenceModel:
    if not isinstance(v, dict):
        raise SchemaError("evidence", "expected a mapping")
    outcomes = _labels(_require(v, "outcomes", "evidence."), "evidence.outcomes")
    if len(set(outcomes)) != len(outcomes):
        raise SchemaError("evidence.outcomes", "duplicate outcome labels")
    table = _matrix(_require(v, "likelihood", "evidence."), states, outcomes, "evidence.likelihood")
    for x in states:
        missing = [e for e in outcomes if (x, e) not in table]
        if missing:
            raise SchemaError(f"evidence.likelihood.{x}", f"missing outcomes {missing}")
        row = [table[(x, e)] for e in outcomes]
        if any(q < 0 or q > 1 for q in row):
            raise SchemaError(f"evidence.likelihood.{x}", "probabilities must lie in [0, 1]")
        total = math.fsum(row)
        if abs(total - 1.0) > TOL:
            raise SchemaError(f"evidence.likelihood.{x}", f"row sums to {total!r}, not 1")
    info_cost = _number(v.get("info_cost", 0.0), "evidence.info_cost")
    if info_cost < 0:
        raise SchemaError("evidence.info_cost", "must be >= 0")
    likelihood = {(e, x): q for (x, e), q in table.items()}
    return EvidenceModel(states, outcomes, likelihood, info_cost)


def _commitments(v: Any, alternatives: tuple[str, ...]) -> tuple[Commitment, ...]:
    if not isinstance(v, list) or not v:
        raise SchemaError("commitments", "expected a non-empty list")
    out = []
    for i, item in enumerate(v):
        path = f"commitments[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(path, "expected a mapping")
        label = _require(item, "label", path + ".")
        if not isinstance(label, str) or not label:
            raise SchemaError(path + ".label", "expected a non-empty string")
        initial = _require(item, "initial_action", path + ".")
        if initial not in alternatives:
            raise SchemaError(path + ".initial_action", f"unknown alternative {initial!r}")
        targets = item.get("revision_targets", [])
        if not isinstance(targets, list):
            raise SchemaError(path + ".revision_targets", "expected a list")
        for j, t in enumerate(targets):
            if t not in alternatives:
                raise SchemaError(f"{path}.revision_targets[{j}]", f"unknown alternative {t!r}")
        switch_cost = _number(item.get("switch_cost", 0.0), path + ".switch_cost")
        observes = item.get("observes_evidence", bool(targets))
        if not isinstance(observes, bool):
            raise SchemaError(path + ".observes_evidence", "expected true or false")
        try:
            out.append(Commitment(label, initial, tuple(targets), switch_cost, observes))
        except InvalidModelError as exc:
            raise SchemaError(path, str(exc)) from None
    return tuple(out)


def load_document(doc: Any, p: float | None = None) -> ParsedModel:
    """Turn an already-decoded JSON value into domain objects.

    ``p`` overrides the document's belief parameter.
    """
    if not isinstance(doc, dict):
        raise SchemaError("$", "top level must be a mapping")
    states = _labels(_require(doc, "states", ""), "states")
    alternatives = _labels(_require(doc, "alternatives", ""), "alternatives")
    payoffs = _matrix(_require(doc, "payoffs", ""), alternatives, states, "payoffs")
    model = DecisionModel(states, alternatives, payoffs)
    check_model(model)

    family, file_p = _belief(_require(doc, "belief", ""), states)
    if p is None:
        p = file_p

    has_ev, has_c = "evidence" in doc, "commitments" in doc
    two_stage = None
    if has_ev or has_c:
        if not has_ev:
            raise SchemaError("evidence", "required when commitments are given")
        if not has_c:
            raise SchemaError("commitments", "required when evidence is given")
        evidence = _evidence(doc["evidence"], states)
        commitments = _commitments(doc["commitments"], alternatives)
        try:
            two_stage = TwoStageModel(model, distribution_at(family, p), evidence, commitments)
        except InvalidModelError as exc:
            raise SchemaError("commitments", str(exc)) from None
    return ParsedModel(model, family, two_stage, p)


def parse_model(text: str, p: float | None = None) -> ParsedModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return load_document(doc, p)


def _as_bernoulli(family: BeliefFamily) -> str | None:
    e0, e1 = family.endpoint0.probs, family.endpoint1.probs
    if len(e0) != 2 or sorted(e0) != [0.0, 1.0] or sorted(e1) != [0.0, 1.0] or e0 == e1:
        return None
    return family.states[e1.index(1.0)]


def to_document(parsed: ParsedModel) -> dict[str, Any]:
    """Inverse of :func:`load_document`; the result re-parses to equal values."""
    model, family, ts, p = parsed
    doc: dict[str, Any] = {
        "states": list(model.states),
        "alternatives": list(model.alternatives),
        "payoffs": [[model.payoffs[(d, x)] for x in model.states] for d in model.alternatives],
    }
    success = _as_bernoulli(family)
    if success is not None:
        doc["belief"] = {"kind": "bernoulli", "success_state": success, "p": p}
    else:
        doc["belief"] = {
            "kind": "mixture",
            "endpoint0": family.endpoint0.weights,
            "endpoint1": family.endpoint1.weights,
            "p": p,
        }
    if ts is not None:
        ev = ts.evidence
        doc["evidence"] = {
            "outcomes": list(ev.outcomes),
            "likelihood": [[ev.likelihood[(e, x)] for e in ev.outcomes] for x in ev.states],
            "info_cost": ev.info_cost,
        }
        doc["commitments"] = [
            {
                "label": c.label,
                "initial_action": c.initial_action,
                "revision_targets": list(c.revision_targets),
                "switch_cost": c.switch_cost,
                "observes_evidence": c.observes_evidence,
            }
            for c in ts.commitments
        ]
    return doc


def read_model(path: str, p: float | None = None) -> ParsedModel:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read(), p)
