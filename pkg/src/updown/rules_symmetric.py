"""Rules for the symmetric utility model: up/down Phragmén and PAV.

In this model a voter is equally pleased by electing an approved candidate
and by blocking a disapproved one, so outcomes are
:class:`~updown.core.ExtendedOutcome` values carrying both parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from updown import kernels
from updown.core import (
    Election,
    ExtendedOutcome,
    SignedCandidate,
    committee_key,
    indices_of,
    mask_of,
    maximal_completion,
)
from updown.errors import GuardExceeded, TooLarge

DEFAULT_PAV_GUARD = 20


@dataclass(frozen=True)
class PurchaseEvent:
    time: Fraction
    item: SignedCandidate
    contributors: frozenset
    contributions: dict


@dataclass
class PhragmenTrace:
    events: list = field(default_factory=list)

    def purchased(self) -> list:
        return [ev.item for ev in self.events]


def earliest_time(group_mask: int, price: Fraction, spent: list, cap=None):
    """First moment the group's budgets add up to ``price``.

    Every voter earns at rate one; ``spent[i]`` is what voter ``i`` has paid
    so far, so its budget at time ``t`` is ``min(t, cap) - spent[i]``.
    Returns ``None`` if the income cap makes the price unreachable.
    """
    size = 0
    paid = Fraction(0)
    i = 0
    mask = group_mask
    while mask:
        if mask & 1:
            size += 1
            paid += spent[i]
        mask >>= 1
        i += 1
    if size == 0:
        return None
    t = (price + paid) / size
    if cap is not None and t > cap:
        return None
    return t


def phragmen_updown(e: Election, negative_first: bool = False):
    """Phragmén's rule with purchasable vetoes.

    Voters earn money continuously.  A group that jointly approves ``c`` may
    buy ``c`` for one unit (while seats remain); a group that jointly
    disapproves ``c`` may buy ``not c`` for one unit.  Buying either side
    removes the other.  The cheapest-in-time item is bought first; ties go
    to the lower candidate index, positive side first unless
    ``negative_first``.  Returns ``(outcome, trace)``.
    """
    spent = [Fraction(0)] * e.n
    resolved = set()
    selected, vetoed = set(), set()
    trace = PhragmenTrace()
    now = Fraction(0)
    while True:
        best = None
        for c in range(e.m):
            if c in resolved:
                continue
            for negative in (False, True):
                group = e.opponent_masks[c] if negative else e.supporter_masks[c]
                if not group or (not negative and len(selected) >= e.k):
                    continue
                t = earliest_time(group, Fraction(1), spent)
                side = (not negative) if negative_first else negative
                key = (t, c, side)
                if best is None or key < best[0]:
                    best = (key, SignedCandidate(c, negative), group)
        if best is None:
            break
        (t, _, _), item, group = best
        assert t >= now
        now = t
        contributors = indices_of(group)
        contributions = {i: t - spent[i] for i in sorted(contributors)}
        for i in contributors:
            spent[i] = t
        trace.events.append(PurchaseEvent(t, item, contributors, contributions))
        resolved.add(item.index)
        (vetoed if item.negative else selected).add(item.index)
    return ExtendedOutcome(frozenset(selected), frozenset(vetoed)), trace


@lru_cache(maxsize=None)
def harmonic(x: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, x + 1)), Fraction(0))


def pav_score(e: Election, selected) -> Fraction:
    """PAV score of the maximal completion of ``selected``."""
    selected = frozenset(selected)
    if len(selected) > e.k:
        raise TooLarge(f"{len(selected)} candidates selected, k={e.k}")
    w = mask_of(selected)
    return sum(
        (harmonic((a & w).bit_count() + (d & ~w).bit_count())
         for a, d in zip(e.approve_masks, e.disapprove_masks)),
        Fraction(0),
    )


def scaled_harmonics(top: int) -> list:
    """``lcm(1..top) * H(x)`` for ``x = 0..top``, all exact integers."""
    scale = math.lcm(*range(1, top + 1)) if top else 1
    return [int(harmonic(x) * scale) for x in range(top + 1)]


def pav_exact(e: Election, guard: int = DEFAULT_PAV_GUARD, backend=None) -> ExtendedOutcome:
    """Exhaustive PAV over every selected set of size at most ``k``."""
    if e.m > guard:
        raise GuardExceeded(f"PAV enumerates 2^m committees; m={e.m} > guard {guard}")
    weights = scaled_harmonics(e.m)
    mask, _ = kernels.pav_best(e.approve_masks, e.disapprove_masks, e.m, e.k,
                               weights, backend=backend)
    return maximal_completion(ExtendedOutcome(indices_of(mask)), e)


def _neighbours(e: Election, current: frozenset):
    outside = [c for c in range(e.m) if c not in current]
    if len(current) < e.k:
        for c in outside:
            yield current | {c}
    for x in current:
        yield current - {x}
        for y in outside:
            yield (current - {x}) | {y}


def pav_local_search(e: Election, start=None, max_rounds=None) -> ExtendedOutcome:
    """Best-improvement local search for PAV.

    Moves add one candidate, drop one, or swap one in for one out.  Because
    the outcome is kept maximally completed, dropping ``x`` is the same as
    adding ``not x`` and a swap is an exchange of ``{y, not x}`` for
    ``{x, not y}``.  Stops at a local optimum.
    """
    current = frozenset(() if start in (None, "empty") else start)
    if len(current) > e.k:
        raise TooLarge(f"start has {len(current)} candidates, k={e.k}")
    score = pav_score(e, current)
    rounds = 0
    while max_rounds is None or rounds < max_rounds:
        best = None
        for cand in _neighbours(e, current):
            s = pav_score(e, cand)
            if s <= score:
                continue
            key = (-s, committee_key(cand))
            if best is None or key < best[0]:
                best = (key, cand, s)
        if best is None:
            break
        _, current, score = best
        rounds += 1
    return maximal_completion(ExtendedOutcome(current), e)
