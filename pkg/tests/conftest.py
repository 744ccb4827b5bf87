from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest

from decflex.bayes import EvidenceModel
from decflex.dynamic import Commitment, TwoStageModel
from decflex.model import BeliefFamily, DecisionModel, distribution_at

STATES = ("sun", "rain")
ALTERNATIVES = ("outdoors", "porch", "indoors")
ROWS = ((100, 0), (90, 20), (40, 50))


def data_path(name: str) -> Path:
    return Path(str(resources.files("decflex") / "data" / name))


@pytest.fixture
def party() -> DecisionModel:
    return DecisionModel.from_rows(STATES, ALTERNATIVES, ROWS)


@pytest.fixture
def weather() -> BeliefFamily:
    return BeliefFamily.bernoulli(STATES, "sun")


def meteorologist_model(
    p: float = 0.7,
    accuracy: float = 0.9,
    info_cost: float = 1.0,
    switch_cost: float = 5.0,
) -> TwoStageModel:
    model = DecisionModel.from_rows(STATES, ALTERNATIVES, ROWS)
    family = BeliefFamily.bernoulli(STATES, "sun")
    evidence = EvidenceModel.symmetric(STATES, STATES, accuracy, info_cost)
    commitments = (
        Commitment.hard("outdoors"),
        Commitment("porch-option", "porch", ("outdoors", "indoors"), switch_cost, True),
        Commitment.hard("indoors"),
    )
    return TwoStageModel(model, distribution_at(family, p), evidence, commitments)


@pytest.fixture
def two_stage() -> TwoStageModel:
    return meteorologist_model()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(RESULTS, key=lambda n: int(n.split()[0][2:])):
        ok, detail = RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
