"""Proportional committee elections with approvals, vetoes and abstentions."""

from updown.axioms import (
    AuditReport,
    Axiom,
    Witness,
    audit_avgsat_bound,
    audit_base_ejr,
    audit_base_pjr,
    audit_ejpr,
    audit_group_veto,
    audit_pjpr,
    audit_weak_group_veto,
    positive_cohesion_level,
    veto_threshold,
)
from updown.claims import (
    GroupEntitlement,
    claim_formula,
    claim_int,
    claim_oracle,
    claim_upper_bound,
    max_extension_size,
)
from updown.core import (
    Ballot,
    Election,
    ExtendedOutcome,
    Rational,
    SignedCandidate,
    approvers_of_set,
    avg_satisfaction,
    common_sets,
    is_feasible,
    maximal_completion,
    satisfaction,
    tally,
    validate_election,
)
from updown.errors import *  # noqa: F401,F403
from updown.kernels import BACKEND
from updown.rules_asymmetric import (
    EXCLUDED,
    PaymentLedger,
    ThieleScoring,
    opposition_price,
    tax_mes,
    tax_phragmen,
    thiele_counterexample,
    thiele_optimize,
)
from updown.rules_symmetric import (
    PhragmenTrace,
    pav_exact,
    pav_local_search,
    pav_score,
    phragmen_updown,
)

__version__ = "0.1.0"
