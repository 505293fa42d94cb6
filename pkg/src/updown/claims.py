"""Group entitlements in the symmetric utility model.

A group's entitlement is the satisfaction some member must reach under
Base EJR.  :func:`claim_formula` evaluates the closed five-case formula;
:func:`claim_oracle` recomputes the same integer straight from the
cohesiveness definition by enumerating every feasible partial outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from updown import kernels
from updown.core import (
    Election,
    ExtendedOutcome,
    _group_mask,
    common_masks,
    indices_of,
    is_feasible,
)
from updown.errors import GuardExceeded, InfeasibleT

DEFAULT_ORACLE_GUARD = 12


@dataclass(frozen=True)
class GroupEntitlement:
    """Entitlement of one voter group.

    ``formula_value`` is the closed-form value, which lets the adversary's
    partial outcome have fractional size.  ``entitlement`` is the integer
    satisfaction the group is actually owed; it is never below the floor of
    the formula value and can exceed it.
    """

    group: frozenset
    a_s: int
    d_s: int
    formula_value: Fraction
    entitlement: int
    case_index: int


def claim_value(n: int, m: int, k: int, s: int, a: int, d: int):
    """Return ``(value, case)`` of the five-case entitlement formula.

    Arguments are plain counts: ``s`` is the group size, ``a`` and ``d`` the
    numbers of commonly approved and commonly disapproved candidates.  Every
    condition is cross-multiplied so that ``s == n`` needs no special case.
    """
    rest = n - s
    if n * k <= d * rest:
        return Fraction(d - k), 1
    if (rest * k <= n * d and d * rest <= n * k
            and (2 * n - s) * a + rest * d >= n * k):
        return Fraction(s * (d + k), 2 * n - s), 2
    base = a + d >= k and n * d <= rest * k
    if base and n * a <= n * m - rest * k:
        return Fraction(s * k, n), 3
    if (base and n * m - rest * k <= n * a
            and n * (a + k - m) <= s * (a + d)):
        return Fraction(a + k - m), 4
    return Fraction(s * (a + d), n), 5


def min_extension_within(m: int, k: int, a: int, d: int, t: int) -> int:
    """Smallest extension an adversary reaches with a partial outcome of size <= t.

    Only counts matter: the adversary puts ``p`` common vetoes and ``q``
    neutral candidates into ``T+`` and vetoes ``r`` common approvals.  The
    group can then still add ``d - p - r + min(a, k - p - q + r)`` items.
    """
    best = d + min(a, k)
    for p in range(min(d, k, t) + 1):
        for r in range(min(a, t - p) + 1):
            q = min(m - a - d, k - p, t - p - r)
            best = min(best, d - p - r + min(a, k - p - q + r))
    return best


def integer_entitlement(n: int, m: int, k: int, s: int, a: int, d: int) -> int:
    """Largest integer ``l`` for which a group of ``s`` voters is ``l``-cohesive.

    A partial outcome only escapes the size test when
    ``|T| <= (n - s) * l / s``; the group is ``l``-cohesive iff every such
    outcome leaves room for ``l`` items.
    """
    ell = 0
    for cand in range(1, d + min(a, k) + 1):
        if min_extension_within(m, k, a, d, (n - s) * cand // s) < cand:
            break
        ell = cand
    return ell


def _counts(e: Election, S):
    smask = _group_mask(e, S)
    am, dm = common_masks(e, smask)
    return smask, am, dm


def claim_formula(e: Election, S) -> GroupEntitlement:
    smask, am, dm = _counts(e, S)
    a, d, s = am.bit_count(), dm.bit_count(), smask.bit_count()
    value, case = claim_value(e.n, e.m, e.k, s, a, d)
    return GroupEntitlement(
        group=indices_of(smask),
        a_s=a,
        d_s=d,
        formula_value=value,
        entitlement=integer_entitlement(e.n, e.m, e.k, s, a, d),
        case_index=case,
    )


def claim_int(e: Election, S) -> int:
    return claim_formula(e, S).entitlement


def claim_upper_bound(e: Election, S) -> Fraction:
    smask, am, dm = _counts(e, S)
    return Fraction(smask.bit_count(), e.n) * (dm.bit_count() + min(e.k, am.bit_count()))


def max_extension_size(e: Election, S, T: ExtendedOutcome) -> int:
    """Largest number of commonly supported items ``S`` can add to ``T``.

    Commonly supported items are the common approvals and the negations of
    the common disapprovals.  Items already in ``T`` count; new approvals
    need free seats.  When ``T+`` holds no common approval this is
    ``|D_S - T+| + min(|A_S - T-|, k - |T+|)``.
    """
    if not is_feasible(T, e):
        raise InfeasibleT("partial outcome T is not feasible")
    _, am, dm = _counts(e, S)
    a_s, d_s = indices_of(am), indices_of(dm)
    held = len(a_s & T.selected)
    a_free = len(a_s - T.selected - T.vetoed)
    return len(d_s - T.selected) + held + min(a_free, e.k - len(T.selected))


def cohesion_from_profile(profile, s: int, n: int) -> int:
    """Largest cohesive level given per-size minimum extension sizes."""
    top = profile[0]
    ell = 0
    for cand in range(1, top + 1):
        ok = all(ext >= cand or s * (t + cand) > n * cand
                 for t, ext in enumerate(profile) if ext >= 0)
        if not ok:
            break
        ell = cand
    return ell


def claim_oracle(e: Election, S, guard: int = DEFAULT_ORACLE_GUARD, backend=None) -> int:
    """Entitlement straight from the cohesiveness definition.

    Enumerates all ``3**m`` sign assignments of candidates to a partial
    outcome ``T``; the group is ``l``-cohesive if every feasible ``T`` either
    leaves room for ``l`` of its items or is small enough that
    ``|S|/n > l/(|T| + l)``.
    """
    if e.m > guard:
        raise GuardExceeded(f"claim oracle enumerates 3^m outcomes; m={e.m} > guard {guard}")
    smask, am, dm = _counts(e, S)
    profile = kernels.extension_profile(am, dm, e.m, e.k, backend=backend)
    return cohesion_from_profile(profile, smask.bit_count(), e.n)
