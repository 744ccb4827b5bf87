from fractions import Fraction

import numpy as np
import pytest

from decflex.bayes import EvidenceModel, posterior, preposterior
from decflex.errors import InvalidModelError, UnknownLabelError, ZeroProbabilityEvidenceError
from decflex.model import Distribution
from helpers import random_distribution

STATES = ("sun", "rain")
PRIOR = Distribution(STATES, (0.7, 0.3))
REPORT = EvidenceModel.symmetric(STATES, STATES, 0.9, info_cost=1.0)


def _bayes(prior, lik):
    # exact Bayes' rule: prior = {x: Fraction}, lik = {x: Fraction}
    joint = {x: prior[x] * lik[x] for x in prior}
    total = sum(joint.values())
    return {x: j / total for x, j in joint.items()}, total


def test_exact_oracle_values():
    prior = {"sun": Fraction(7, 10), "rain": Fraction(3, 10)}
    post, pe = _bayes(prior, {"sun": Fraction(1, 10), "rain": Fraction(9, 10)})
    assert (post["rain"], pe) == (Fraction(27, 34), Fraction(34, 100))
    post, pe = _bayes(prior, {"sun": Fraction(9, 10), "rain": Fraction(1, 10)})
    assert (post["sun"], pe) == (Fraction(21, 22), Fraction(66, 100))


def test_posteriors():
    rain = posterior(PRIOR, REPORT, "rain")
    assert rain["rain"] == pytest.approx(27 / 34, abs=1e-12)
    assert rain["sun"] == pytest.approx(7 / 34, abs=1e-12)
    sun = posterior(PRIOR, REPORT, "sun")
    assert sun["sun"] == pytest.approx(21 / 22, abs=1e-12)
    assert sun["rain"] == pytest.approx(1 / 22, abs=1e-12)


def test_uninformative_report_leaves_prior():
    ev = EvidenceModel.from_rows(STATES, ("a", "b"), [[0.4, 0.6], [0.4, 0.6]])
    for e in ev.outcomes:
        assert posterior(PRIOR, ev, e).probs == pytest.approx(PRIOR.probs, abs=1e-15)


def test_preposterior():
    pre = preposterior(PRIOR, REPORT)
    assert pre["sun"] == pytest.approx(0.66, abs=1e-12)
    assert pre["rain"] == pytest.approx(0.34, abs=1e-12)


def test_identity_likelihood():
    states = ("a", "b", "c")
    prior = Distribution(states, (0.2, 0.5, 0.3))
    ev = EvidenceModel.symmetric(states, ("A", "B", "C"), 1.0)
    assert preposterior(prior, ev) == pytest.approx({"A": 0.2, "B": 0.5, "C": 0.3})
    assert posterior(prior, ev, "B").probs == (0.0, 1.0, 0.0)


def test_constant_row():
    ev = EvidenceModel.from_rows(STATES, ("e0", "e1"), [[0.25, 0.75], [0.25, 0.75]])
    assert preposterior(PRIOR, ev)["e0"] == pytest.approx(0.25)


def test_zero_probability_evidence():
    prior = Distribution(STATES, (1.0, 0.0))
    ev = EvidenceModel.symmetric(STATES, STATES, 1.0)
    with pytest.raises(ZeroProbabilityEvidenceError):
        posterior(prior, ev, "rain")


def test_unknown_evidence():
    with pytest.raises(UnknownLabelError):
        posterior(PRIOR, REPORT, "snow")


def test_likelihood_must_normalize():
    with pytest.raises(InvalidModelError, match="sum"):
        EvidenceModel.from_rows(STATES, ("a", "b"), [[0.5, 0.45], [0.5, 0.5]])
    with pytest.raises(InvalidModelError):
        EvidenceModel.from_rows(STATES, ("a", "b"), [[1.5, -0.5], [0.5, 0.5]])
    with pytest.raises(InvalidModelError):
        EvidenceModel.symmetric(STATES, STATES, 0.9, info_cost=-1)


def test_martingale_and_validity():
    rng = np.random.default_rng(7)
    for _ in range(300):
        n_st, n_e = int(rng.integers(2, 5)), int(rng.integers(1, 5))
        states = tuple(f"x{i}" for i in range(n_st))
        prior = random_distribution(rng, states)
        rows = [rng.dirichlet(np.ones(n_e)).tolist() for _ in states]
        ev = EvidenceModel.from_rows(states, tuple(f"e{i}" for i in range(n_e)), rows)
        pre = preposterior(prior, ev)
        assert sum(pre.values()) == pytest.approx(1.0, abs=1e-9)
        mixed = np.zeros(n_st)
        for e, pe in pre.items():
            if pe <= 1e-15:
                continue
            post = posterior(prior, ev, e)
            assert sum(post.probs) == pytest.approx(1.0, abs=1e-9)
            assert all(0.0 <= q <= 1.0 + 1e-12 for q in post.probs)
            mixed += pe * np.array(post.probs)
        assert mixed == pytest.approx(np.array(prior.probs), abs=1e-9)
