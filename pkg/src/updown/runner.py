"""Name-based dispatch from rule and axiom names to their implementations."""

from __future__ import annotations

from updown import axioms
from updown.axioms import Axiom
from updown.rules_asymmetric import tax_mes, tax_phragmen, thiele_optimize, veto_penalty_scoring
from updown.rules_symmetric import pav_exact, pav_local_search, phragmen_updown

RULES = ("phragmen-sym", "pav-exact", "pav-local", "tax-mes", "tax-phragmen", "thiele")

SYMMETRIC_AXIOMS = {
    "phragmen-sym": (Axiom.BASE_EJR, Axiom.BASE_PJR, Axiom.PHRAGMEN_AVG),
    "pav-exact": (Axiom.BASE_EJR, Axiom.BASE_PJR, Axiom.PAV_AVG),
    "pav-local": (Axiom.BASE_EJR, Axiom.BASE_PJR, Axiom.PAV_AVG),
}
ASYMMETRIC_AXIOMS = (Axiom.EJPR, Axiom.PJPR, Axiom.GROUP_VETO, Axiom.WEAK_GROUP_VETO)


def run_rule(name: str, e, scoring=None, complete=False, uncapped=False,
             negative_first=False, guard=None):
    """Run rule ``name``; returns ``(outcome, ledger_or_trace_or_None)``."""
    if name == "phragmen-sym":
        return phragmen_updown(e, negative_first=negative_first)
    if name == "pav-exact":
        return (pav_exact(e) if guard is None else pav_exact(e, guard=guard)), None
    if name == "pav-local":
        return pav_local_search(e), None
    if name == "tax-mes":
        return tax_mes(e, complete=complete)
    if name == "tax-phragmen":
        return tax_phragmen(e, uncapped=uncapped)
    if name == "thiele":
        f = scoring if scoring is not None else veto_penalty_scoring(1)
        return (thiele_optimize(e, f) if guard is None else thiele_optimize(e, f, guard=guard)), None
    raise ValueError(f"unknown rule {name!r}")


def applicable_axioms(rule: str) -> tuple:
    return SYMMETRIC_AXIOMS.get(rule, ASYMMETRIC_AXIOMS)


def run_audit(axiom: Axiom, e, o, guard=None, limit=None):
    kwargs = {"limit": limit}
    if guard is not None:
        kwargs["guard"] = guard
    if axiom is Axiom.BASE_EJR:
        return axioms.audit_base_ejr(e, o, **kwargs)
    if axiom is Axiom.BASE_PJR:
        return axioms.audit_base_pjr(e, o, **kwargs)
    if axiom is Axiom.PHRAGMEN_AVG:
        return axioms.audit_avgsat_bound(e, o, "phragmen", **kwargs)
    if axiom is Axiom.PAV_AVG:
        return axioms.audit_avgsat_bound(e, o, "pav", **kwargs)
    if axiom is Axiom.EJPR:
        return axioms.audit_ejpr(e, o, **kwargs)
    if axiom is Axiom.PJPR:
        return axioms.audit_pjpr(e, o, **kwargs)
    if axiom is Axiom.GROUP_VETO:
        return axioms.audit_group_veto(e, o, **kwargs)
    if axiom is Axiom.WEAK_GROUP_VETO:
        return axioms.audit_weak_group_veto(e, o, **kwargs)
    raise ValueError(f"unknown axiom {axiom!r}")
