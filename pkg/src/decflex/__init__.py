"""Decision flexibility analysis.

Brittleness of alternatives under belief variability and clairvoyance, and
the value of keeping a commitment revisable when evidence arrives later.
"""

from decflex.bayes import EvidenceModel, posterior, preposterior
from decflex.dynamic import (
    Commitment,
    PolicyReport,
    PolicyRow,
    TwoStageModel,
    baseline_value,
    flexibility_value,
    most_flexible_commitment,
    net_value,
    revision_policy,
    value_with_flexibility,
)
from decflex.envelope import (
    Envelope,
    Line,
    Segment,
    ce_line,
    evaluate_envelope,
    integrate_envelope,
    integrate_line,
    upper_envelope,
)
from decflex.model import (
    BeliefFamily,
    DecisionModel,
    Distribution,
    distribution_at,
    payoff,
    validate_model,
)
from decflex.modelfile import ParsedModel, parse_model
from decflex.static import (
    BrittlenessReport,
    brittleness,
    brittleness_belief,
    brittleness_clairvoyance,
    brittleness_outcomes,
    clairvoyance_line,
    flexibility_ranking,
    meu,
)

__version__ = "0.1.0"
