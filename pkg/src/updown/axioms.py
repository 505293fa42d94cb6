"""Exhaustive auditors for the proportionality axioms.

Each auditor sweeps every nonempty voter group (or every subset of the
selected candidates, for the veto axioms) under an explicit size guard and returns an
:class:`AuditReport`.  A report fails iff it carries witnesses, and every
witness can be re-checked from the election and outcome alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from updown import kernels
from updown.claims import claim_value, integer_entitlement
from updown.core import (
    Election,
    ExtendedOutcome,
    _group_mask,
    common_masks,
    indices_of,
    is_feasible,
    mask_of,
    maximal_completion,
)
from updown.errors import EmptyT, GuardExceeded, InfeasibleOutcome, NotApplicable

DEFAULT_VOTER_GUARD = 16
DEFAULT_CANDIDATE_GUARD = 16


class Axiom(enum.Enum):
    BASE_EJR = "base-ejr"
    BASE_PJR = "base-pjr"
    PHRAGMEN_AVG = "phragmen-avg"
    PAV_AVG = "pav-avg"
    EJPR = "ejpr"
    PJPR = "pjpr"
    GROUP_VETO = "group-veto"
    WEAK_GROUP_VETO = "weak-group-veto"


@dataclass(frozen=True)
class Witness:
    group: frozenset
    required: object
    achieved: object
    candidate_set: frozenset | None = None
    details: dict = field(default_factory=dict)

    def sort_key(self):
        return (tuple(sorted(self.group)), tuple(sorted(self.candidate_set or ())))


@dataclass
class AuditReport:
    axiom: Axiom
    witnesses: list = field(default_factory=list)
    guards: dict = field(default_factory=dict)
    violation_count: int = 0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def _finish(report: AuditReport, found: list, limit):
    found.sort(key=Witness.sort_key)
    report.violation_count = len(found)
    report.witnesses = found if limit is None else found[:limit]
    return report


def _check_outcome(e: Election, o: ExtendedOutcome):
    if not is_feasible(o, e):
        raise InfeasibleOutcome("outcome is not feasible for this election")


def _voter_guard(e: Election, guard: int):
    if e.n > guard:
        raise GuardExceeded(f"auditor enumerates 2^n voter groups; n={e.n} > guard {guard}")


def _voter_sweep(e: Election):
    return kernels.subset_sweep(e.approve_masks, e.disapprove_masks, e.all_candidates_mask)


def _per_group(values: list, combine, size: int) -> list:
    """Fold per-voter ``values`` over every subset mask with ``combine``."""
    out = [None] * (1 << size)
    for s in range(1, 1 << size):
        low = s & -s
        v = values[low.bit_length() - 1]
        rest = out[s ^ low]
        out[s] = v if rest is None else combine(rest, v)
    return out


def _satisfactions(e: Election, o: ExtendedOutcome) -> list:
    w = mask_of(o.selected)
    v = mask_of(o.vetoed)
    return [(a & w).bit_count() + (d & v).bit_count()
            for a, d in zip(e.approve_masks, e.disapprove_masks)]


def _base_audit(e, o, guard, limit, collective: bool):
    _voter_guard(e, guard)
    _check_outcome(e, o)
    axiom = Axiom.BASE_PJR if collective else Axiom.BASE_EJR
    report = AuditReport(axiom, guards={"max_n": guard})
    full = maximal_completion(o, e)
    w = mask_of(full.selected)
    sat = _satisfactions(e, full)
    raw = _satisfactions(e, o)
    best = _per_group(sat, max, e.n)
    best_raw = _per_group(raw, max, e.n)
    ia, ib, ua, ub = _voter_sweep(e)
    cache: dict = {}
    found = []
    for s in range(1, 1 << e.n):
        key = (s.bit_count(), ia[s].bit_count(), ib[s].bit_count())
        if key not in cache:
            cache[key] = integer_entitlement(e.n, e.m, e.k, *key)
        need = cache[key]
        if collective:
            got = (ua[s] & w).bit_count() + (ub[s] & ~w).bit_count()
            details = {}
        else:
            got = best[s]
            details = {"achieved_raw": best_raw[s]}
        if got < need:
            found.append(Witness(indices_of(s), need, got, details=details))
    return _finish(report, found, limit)


def audit_base_ejr(e: Election, o: ExtendedOutcome, guard: int = DEFAULT_VOTER_GUARD, limit=None):
    """Some member of every group reaches the group's entitlement."""
    return _base_audit(e, o, guard, limit, collective=False)


def audit_base_pjr(e: Election, o: ExtendedOutcome, guard: int = DEFAULT_VOTER_GUARD, limit=None):
    """Every group collectively reaches its entitlement."""
    return _base_audit(e, o, guard, limit, collective=True)


def avgsat_requirement(kind: str, k: int, claim: Fraction) -> Fraction:
    if kind == "phragmen":
        return (claim - 1) / 2
    if kind == "pav":
        return (1 - Fraction(2, k + 4)) * claim - Fraction(3, 2)
    raise ValueError(f"unknown bound kind {kind!r}")


def audit_avgsat_bound(e: Election, o: ExtendedOutcome, kind: str,
                       guard: int = DEFAULT_VOTER_GUARD, limit=None):
    """Average satisfaction of every group against the rule's guarantee.

    ``phragmen``: at least ``(claim - 1) / 2``.
    ``pav``: at least ``(1 - 2/(k+4)) * claim - 3/2``.
    ``claim`` is the exact formula value; the outcome is used as given.
    """
    _voter_guard(e, guard)
    _check_outcome(e, o)
    axiom = {"phragmen": Axiom.PHRAGMEN_AVG, "pav": Axiom.PAV_AVG}.get(kind)
    if axiom is None:
        raise ValueError(f"unknown bound kind {kind!r}")
    report = AuditReport(axiom, guards={"max_n": guard})
    total = _per_group(_satisfactions(e, o), int.__add__, e.n)
    ia, ib, _, _ = _voter_sweep(e)
    cache: dict = {}
    found = []
    for s in range(1, 1 << e.n):
        size = s.bit_count()
        key = (size, ia[s].bit_count(), ib[s].bit_count())
        if key not in cache:
            value, _ = claim_value(e.n, e.m, e.k, *key)
            cache[key] = avgsat_requirement(kind, e.k, value)
        need = cache[key]
        got = Fraction(total[s], size)
        if got < need:
            found.append(Witness(indices_of(s), need, got))
    return _finish(report, found, limit)


def _positive_level(e: Election, size: int, amask: int) -> int:
    margins = sorted((size - e.opponent_masks[c].bit_count() for c in indices_of(amask)),
                     reverse=True)
    ell = 0
    while ell < min(e.k, len(margins)) and margins[ell] * e.k >= (ell + 1) * e.n:
        ell += 1
    return ell


def positive_cohesion_level(e: Election, S) -> int:
    """Largest ``l`` such that ``S`` commonly approves ``l`` candidates ``c``
    with ``|S| - |D_c| >= l * n / k``."""
    smask = _group_mask(e, S)
    amask, _ = common_masks(e, smask)
    return _positive_level(e, smask.bit_count(), amask)


def _positive_audit(e, o, guard, limit, collective: bool):
    _voter_guard(e, guard)
    _check_outcome(e, o)
    axiom = Axiom.PJPR if collective else Axiom.EJPR
    report = AuditReport(axiom, guards={"max_n": guard})
    w = mask_of(o.selected)
    per_voter = [(a & w).bit_count() for a in e.approve_masks]
    best = _per_group(per_voter, max, e.n)
    ia, _, ua, _ = _voter_sweep(e)
    found = []
    for s in range(1, 1 << e.n):
        if not ia[s]:
            continue
        ell = _positive_level(e, s.bit_count(), ia[s])
        if ell == 0:
            continue
        got = (ua[s] & w).bit_count() if collective else best[s]
        if got < ell:
            found.append(Witness(indices_of(s), ell, got))
    return _finish(report, found, limit)


def audit_ejpr(e: Election, o: ExtendedOutcome, guard: int = DEFAULT_VOTER_GUARD, limit=None):
    """Some member of every positively cohesive group has ``l`` approved winners."""
    return _positive_audit(e, o, guard, limit, collective=False)


def audit_pjpr(e: Election, o: ExtendedOutcome, guard: int = DEFAULT_VOTER_GUARD, limit=None):
    """Every positively cohesive group has ``l`` approved winners in its union."""
    return _positive_audit(e, o, guard, limit, collective=True)


def _threshold(k: int, n: int, size_t: int, ap: int, star: int):
    ell = max(1, -(-k * (ap - star) // n))
    return ell if ell <= min(k, size_t) else None


def veto_threshold(e: Election, T):
    """Return ``(S*, l0)``: the voters vetoing all of ``T`` and the smallest
    ``l <= min(k, |T|)`` with ``|S*| >= |ap(T)| - l * n / k`` (or None)."""
    T = frozenset(T)
    if not T:
        raise EmptyT("candidate set T must be nonempty")
    star = e.all_voters_mask
    ap = 0
    for c in T:
        star &= e.opponent_masks[c]
        ap |= e.supporter_masks[c]
    ell = _threshold(e.k, e.n, len(T), ap.bit_count(), star.bit_count())
    return indices_of(star), ell


def _selected_sweep(e: Election, o: ExtendedOutcome):
    """``S*`` and ``ap`` masks for every subset of the selected candidates.

    A violating ``T`` stays violating when intersected with the outcome:
    ``ap`` can only shrink, ``S*`` only grow and ``|W & T|`` is unchanged.
    Subsets of the selected set therefore decide both veto axioms.
    """
    chosen = sorted(o.selected)
    star, _, _, ap = kernels.subset_sweep([e.opponent_masks[c] for c in chosen],
                                          [e.supporter_masks[c] for c in chosen],
                                          e.all_voters_mask)
    return chosen, star, ap


def _selected_guard(o: ExtendedOutcome, guard: int):
    if len(o.selected) > guard:
        raise GuardExceeded(
            f"veto auditor enumerates subsets of the {len(o.selected)} selected candidates; guard {guard}")


def _lift(chosen, t: int) -> frozenset:
    return frozenset(chosen[j] for j in indices_of(t))


def audit_group_veto(e: Election, o: ExtendedOutcome, guard: int = DEFAULT_CANDIDATE_GUARD, limit=None):
    """At most ``l0`` winners from every negatively cohesive candidate set ``T``.

    Sets whose vetoing group ``S*`` is empty are still checked; their
    witnesses are marked ``degenerate``.  ``guard`` bounds the number of
    selected candidates.
    """
    _check_outcome(e, o)
    _selected_guard(o, guard)
    report = AuditReport(Axiom.GROUP_VETO, guards={"max_selected": guard})
    chosen, star, ap = _selected_sweep(e, o)
    found = []
    for t in range(1, 1 << len(chosen)):
        size = t.bit_count()
        ell = _threshold(e.k, e.n, size, ap[t].bit_count(), star[t].bit_count())
        if ell is not None and size > ell:
            found.append(Witness(indices_of(star[t]), ell, size, candidate_set=_lift(chosen, t),
                                 details={"degenerate": star[t] == 0}))
    return _finish(report, found, limit)


def weak_veto_anchors(e: Election) -> list:
    """Candidates ``c*`` with no opponents whose supporters share only ``c*``."""
    out = []
    for c in range(e.m):
        group = e.supporter_masks[c]
        if not group or e.opponent_masks[c]:
            continue
        common, _ = common_masks(e, group)
        if common == 1 << c:
            out.append(c)
    return out


def audit_weak_group_veto(e: Election, o: ExtendedOutcome, guard: int = DEFAULT_CANDIDATE_GUARD, limit=None):
    """Weak Group Veto for every anchor candidate ``c*`` left out of the outcome.

    ``S'`` is the full supporter set of ``c*``.  For each ``T`` the bound is
    the smallest ``l <= min(k, |T|)`` with ``|S*| >= |ap(T)| - l * |S'|``
    and the outcome must elect fewer than ``l`` members of ``T``.
    """
    _check_outcome(e, o)
    _selected_guard(o, guard)
    anchors = weak_veto_anchors(e)
    if not anchors:
        raise NotApplicable("no candidate c* with D_c* empty and A_{A_c*} = {c*}")
    report = AuditReport(Axiom.WEAK_GROUP_VETO, guards={"max_selected": guard})
    report.notes.append("anchors: " + ", ".join(e.candidates[c] for c in anchors))
    chosen, star, ap = _selected_sweep(e, o)
    found = []
    for c in anchors:
        if c in o.selected:
            continue
        width = e.supporter_masks[c].bit_count()
        for t in range(1, 1 << len(chosen)):
            size = t.bit_count()
            gap = ap[t].bit_count() - star[t].bit_count()
            ell = max(1, -(-gap // width))
            if ell <= min(e.k, size):
                found.append(Witness(indices_of(star[t]), ell, size, candidate_set=_lift(chosen, t),
                                     details={"anchor": c}))
    return _finish(report, found, limit)
