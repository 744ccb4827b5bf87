"""Seeded random model generators shared by the property and acceptance tests."""

from __future__ import annotations

import numpy as np

from decflex.bayes import EvidenceModel
from decflex.dynamic import Commitment, TwoStageModel
from decflex.model import BeliefFamily, DecisionModel, Distribution


def random_distribution(rng: np.random.Generator, states, sparse: bool = True) -> Distribution:
    w = rng.dirichlet(np.ones(len(states)))
    if sparse and rng.random() < 0.2:
        w[rng.integers(len(states))] = 0.0
        if w.sum() == 0:
            w[0] = 1.0
    w = w / w.sum()
    return Distribution(tuple(states), tuple(float(v) for v in w))


def random_model(rng: np.random.Generator, alts=(2, 6), states=(2, 5), integer: bool | None = None) -> DecisionModel:
    n_alt = int(rng.integers(alts[0], alts[1] + 1))
    n_st = int(rng.integers(states[0], states[1] + 1))
    if integer is None:
        integer = rng.random() < 0.5
    if integer:
        # coarse integers make exact ties common
        rows = rng.integers(-10, 11, size=(n_alt, n_st)) * 10
    else:
        rows = rng.uniform(-100, 100, size=(n_alt, n_st))
    return DecisionModel.from_rows(
        [f"x{i}" for i in range(n_st)], [f"d{i}" for i in range(n_alt)], rows.tolist()
    )


def random_family(rng: np.random.Generator, model: DecisionModel) -> BeliefFamily:
    return BeliefFamily(random_distribution(rng, model.states), random_distribution(rng, model.states))


def random_two_stage(rng: np.random.Generator) -> TwoStageModel:
    model = random_model(rng, alts=(2, 4), states=(2, 3))
    n_e = int(rng.integers(1, 4))
    outcomes = tuple(f"e{i}" for i in range(n_e))
    rows = [rng.dirichlet(np.ones(n_e)).tolist() for _ in model.states]
    if rng.random() < 0.2:
        # a never-seen report exercises the zero-probability branch
        rows = [[0.0] + r[1:] for r in rows] if n_e > 1 else rows
        rows = [[v / sum(r) for v in r] for r in rows]
    evidence = EvidenceModel.from_rows(model.states, outcomes, rows, float(rng.uniform(0, 5)))
    commitments = [Commitment.hard(d) for d in model.alternatives if rng.random() < 0.7]
    for i, d in enumerate(model.alternatives):
        others = [a for a in model.alternatives if a != d]
        k = int(rng.integers(0, len(others) + 1))
        targets = tuple(others[:k])
        if targets or rng.random() < 0.3:
            commitments.append(
                Commitment(f"soft-{d}", d, targets, float(rng.uniform(0, 10)), True)
            )
    if not commitments:
        commitments.append(Commitment.hard(model.alternatives[0]))
    return TwoStageModel(model, random_distribution(rng, model.states), evidence, tuple(commitments))
