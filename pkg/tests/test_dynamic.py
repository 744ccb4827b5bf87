from fractions import Fraction

import numpy as np
import pytest

from conftest import ALTERNATIVES, STATES, meteorologist_model
from decflex.bayes import EvidenceModel, posterior
from decflex.dynamic import (
    Commitment,
    TwoStageModel,
    baseline_value,
    flexibility_value,
    most_flexible_commitment,
    net_value,
    revision_policy,
    value_with_flexibility,
)
from decflex.errors import (
    IllegalRevisionError,
    InvalidModelError,
    UnknownLabelError,
    ZeroProbabilityEvidenceError,
)
from decflex.model import BeliefFamily, DecisionModel, Distribution, distribution_at
from decflex.static import clairvoyance_line, meu
from helpers import random_two_stage

SUN_POST = Distribution(STATES, (21 / 22, 1 / 22))
RAIN_POST = Distribution(STATES, (7 / 34, 27 / 34))


def _exact_porch_option():
    # nine contingency plans evaluated in exact arithmetic
    prior = {"sun": Fraction(7, 10), "rain": Fraction(3, 10)}
    lik = {("sun", "sun"): Fraction(9, 10), ("sun", "rain"): Fraction(1, 10),
           ("rain", "sun"): Fraction(1, 10), ("rain", "rain"): Fraction(9, 10)}
    pay = {"outdoors": (100, 0), "porch": (90, 20), "indoors": (40, 50)}
    best = None
    for r_sun in pay:
        for r_rain in pay:
            total = Fraction(0)
            for e, r in (("sun", r_sun), ("rain", r_rain)):
                cost = 1 + (5 if r != "porch" else 0)
                for i, x in enumerate(("sun", "rain")):
                    total += prior[x] * lik[(e, x)] * (pay[r][i] - cost)
            if best is None or total > best[0]:
                best = (total, r_sun, r_rain)
    return best


def test_exact_oracle():
    assert _exact_porch_option() == (Fraction(733, 10), "outdoors", "indoors")


def test_net_values(two_stage):
    porch = two_stage.commitment("porch-option")
    assert net_value(two_stage, porch, "outdoors", SUN_POST) == pytest.approx(100 * 21 / 22 - 6, abs=1e-9)
    assert net_value(two_stage, porch, "indoors", RAIN_POST) == pytest.approx(50 - 10 * 7 / 34 - 6, abs=1e-9)
    assert net_value(two_stage, "outdoors", "outdoors", two_stage.prior) == pytest.approx(70.0, abs=1e-9)


def test_illegal_revision(two_stage):
    with pytest.raises(IllegalRevisionError):
        net_value(two_stage, "outdoors", "porch", two_stage.prior)
    with pytest.raises(IllegalRevisionError):
        revision_policy(two_stage, "outdoors", "sun")
    with pytest.raises(UnknownLabelError):
        two_stage.commitment("picnic")


def test_revision_policy(two_stage):
    action, value = revision_policy(two_stage, "porch-option", "sun")
    assert action == "outdoors" and value == pytest.approx(89.454545, abs=1e-6)
    action, value = revision_policy(two_stage, "porch-option", "rain")
    assert action == "indoors" and value == pytest.approx(41.941176, abs=1e-6)


def test_staying_values(two_stage):
    porch = two_stage.commitment("porch-option")
    assert net_value(two_stage, porch, "porch", SUN_POST) == pytest.approx(85.818182, abs=1e-6)
    assert net_value(two_stage, porch, "porch", RAIN_POST) == pytest.approx(33.411765, abs=1e-6)
    assert net_value(two_stage, porch, "indoors", SUN_POST) == pytest.approx(34.454545, abs=1e-6)
    assert net_value(two_stage, porch, "outdoors", RAIN_POST) == pytest.approx(14.588235, abs=1e-6)


def test_prohibitive_switch_cost_forces_stay():
    ts = meteorologist_model(switch_cost=1e12)
    assert revision_policy(ts, "porch-option", "sun").action == "porch"
    assert revision_policy(ts, "porch-option", "rain").action == "porch"


def test_value_with_flexibility(two_stage):
    assert value_with_flexibility(two_stage, "porch-option") == pytest.approx(73.3, abs=1e-9)
    assert value_with_flexibility(two_stage, "outdoors") == pytest.approx(70.0, abs=1e-9)
    assert baseline_value(two_stage) == pytest.approx(70.0, abs=1e-9)


def test_flexibility_report(two_stage):
    report = flexibility_value(two_stage, "porch-option")
    assert report.flexibility_value == pytest.approx(3.3, abs=1e-9)
    assert [(r.evidence, r.action) for r in report.rows] == [("sun", "outdoors"), ("rain", "indoors")]
    assert sum(r.probability * r.value for r in report.rows) == pytest.approx(report.value_with_flexibility)
    assert flexibility_value(two_stage, "outdoors").flexibility_value == pytest.approx(0.0, abs=1e-9)
    # prior EV of indoors is 40 * 0.7 + 50 * 0.3 = 43
    assert flexibility_value(two_stage, "indoors").flexibility_value == pytest.approx(-27.0, abs=1e-9)


def test_uninformative_zero_cost_option():
    ts = meteorologist_model(accuracy=0.5, info_cost=0.0, switch_cost=0.0)
    assert value_with_flexibility(ts, "porch-option") == pytest.approx(70.0, abs=1e-9)


def test_most_flexible(two_stage):
    label, value = most_flexible_commitment(two_stage)
    assert label == "porch-option" and value == pytest.approx(3.3, abs=1e-9)


def test_most_flexible_absent():
    hard_only = TwoStageModel(
        meteorologist_model().base,
        meteorologist_model().prior,
        meteorologist_model().evidence,
        tuple(Commitment.hard(d) for d in ALTERNATIVES),
    )
    assert most_flexible_commitment(hard_only) is None
    # porch option is worth 73.3 - (info_cost - 1); it turns negative past info_cost 4.3
    assert most_flexible_commitment(meteorologist_model(info_cost=5.0)) is None
    assert most_flexible_commitment(meteorologist_model(info_cost=4.2)) is not None


def test_negative_flexibility_sign_change():
    values = {c: flexibility_value(meteorologist_model(info_cost=c), "porch-option").flexibility_value
              for c in (4.0, 4.3, 4.6)}
    assert values[4.0] > 0 and values[4.6] < 0
    assert values[4.3] == pytest.approx(0.0, abs=1e-9)


def test_baseline_ignores_evidence():
    ts = meteorologist_model(p=0.3)
    # at P(sun) = 0.3 indoors is best (47) and porch yields 41
    assert baseline_value(ts) == pytest.approx(47.0, abs=1e-9)


def test_commitment_invariants():
    with pytest.raises(InvalidModelError):
        Commitment("c", "porch", ("outdoors",), 1.0, observes_evidence=False)
    with pytest.raises(InvalidModelError):
        Commitment("c", "porch", ("porch",), 1.0, True)
    with pytest.raises(InvalidModelError):
        Commitment("c", "porch", (), -1.0)
    ts = meteorologist_model()
    with pytest.raises(InvalidModelError):
        TwoStageModel(ts.base, ts.prior, ts.evidence, ())
    with pytest.raises(InvalidModelError):
        TwoStageModel(ts.base, ts.prior, ts.evidence, (Commitment.hard("picnic"),))


def test_zero_cost_perfect_information_is_clairvoyance():
    model = DecisionModel.from_rows(STATES, ALTERNATIVES, ((100, 0), (90, 20), (40, 50)))
    family = BeliefFamily.bernoulli(STATES, "sun")
    evidence = EvidenceModel.symmetric(STATES, STATES, 1.0, 0.0)
    for p in np.linspace(0, 1, 21):
        p = float(p)
        soft = Commitment("open", "porch", ("outdoors", "indoors"), 0.0, True)
        ts = TwoStageModel(model, distribution_at(family, p), evidence,
                           (soft, *(Commitment.hard(d) for d in ALTERNATIVES)))
        clair = clairvoyance_line(model, family)(p)
        assert value_with_flexibility(ts, soft) == pytest.approx(clair, abs=1e-9)
        env = meu(model, distribution_at(family, p)).value
        assert flexibility_value(ts, soft).flexibility_value == pytest.approx(clair - env, abs=1e-9)


def test_information_never_hurts_when_free():
    rng = np.random.default_rng(11)
    for _ in range(200):
        ts = random_two_stage(rng)
        evidence = EvidenceModel(ts.evidence.states, ts.evidence.outcomes, ts.evidence.likelihood, 0.0)
        alts = ts.base.alternatives
        soft = Commitment("free", alts[0], alts[1:], 0.0, True)
        free = TwoStageModel(ts.base, ts.prior, evidence, (soft, *(Commitment.hard(d) for d in alts)))
        assert flexibility_value(free, soft).flexibility_value >= -1e-9


def test_monotone_in_costs():
    for field, levels in (("info_cost", (0, 1, 2, 4, 8, 16)), ("switch_cost", (0, 1, 2, 5, 10, 50))):
        values = [flexibility_value(meteorologist_model(**{field: c}), "porch-option").flexibility_value
                  for c in levels]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))


def test_stay_option_never_beaten_by_policy():
    rng = np.random.default_rng(5)
    for _ in range(100):
        ts = random_two_stage(rng)
        for c in ts.commitments:
            if not c.observes_evidence:
                continue
            for e in ts.evidence.outcomes:
                try:
                    value = revision_policy(ts, c, e).value
                except ZeroProbabilityEvidenceError:
                    continue
                stay = net_value(ts, c, c.initial_action, posterior(ts.prior, ts.evidence, e))
                assert value >= stay - 1e-12
