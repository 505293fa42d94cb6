"""Reference implementations of the classic approval-only rules.

These ignore disapprovals entirely and are written independently of the
up/down rules (load-based Phragmén, fixed-size PAV, unit-price MES) so that
the degeneration checks compare two separate code paths.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from updown.core import Election


def sequential_phragmen(e: Election) -> frozenset:
    """Load-balancing sequential Phragmén; ties go to the lowest index."""
    load = [Fraction(0)] * e.n
    supporters = [[i for i in range(e.n) if c in e.ballots[i].approve] for c in range(e.m)]
    chosen: list = []
    while len(chosen) < e.k:
        best = None
        for c in range(e.m):
            if c in chosen or not supporters[c]:
                continue
            new_load = (1 + sum(load[i] for i in supporters[c])) / len(supporters[c])
            if best is None or new_load < best[0]:
                best = (new_load, c)
        if best is None:
            break
        new_load, c = best
        for i in supporters[c]:
            load[i] = new_load
        chosen.append(c)
    return frozenset(chosen)


def pav(e: Election) -> frozenset:
    """Approval PAV over committees of exactly ``k`` (or fewer if all tie at zero).

    With approval-only ballots adding a candidate never lowers the score, so
    only ``k``-subsets are compared; the first maximum in lexicographic
    order wins.
    """
    def harm(x):
        return sum((Fraction(1, j) for j in range(1, x + 1)), Fraction(0))

    best, best_score = None, None
    for combo in combinations(range(e.m), e.k):
        w = set(combo)
        score = sum(harm(len(w & set(b.approve))) for b in e.ballots)
        if best_score is None or score > best_score:
            best, best_score = combo, score
    return frozenset(best)


def _rho(budgets, price):
    """Smallest rho with sum(min(b, rho)) == price, or None."""
    if sum(budgets) < price:
        return None
    price = Fraction(price)
    options = [max(budgets)]
    ordered = sorted(budgets)
    for j in range(len(ordered)):
        options.append((price - sum(ordered[:j])) / (len(ordered) - j))
    valid = [r for r in options if r >= 0 and sum(min(b, r) for b in budgets) == price]
    return min(valid)


def equal_shares(e: Election) -> frozenset:
    """Method of Equal Shares with unit prices and budget ``k/n`` per voter."""
    budget = [Fraction(e.k, e.n)] * e.n
    chosen: list = []
    while len(chosen) < e.k:
        best = None
        for c in range(e.m):
            if c in chosen:
                continue
            group = [i for i in range(e.n) if c in e.ballots[i].approve]
            if not group:
                continue
            rho = _rho([budget[i] for i in group], 1)
            if rho is not None and (best is None or rho < best[0]):
                best = (rho, c, group)
        if best is None:
            break
        rho, c, group = best
        for i in group:
            budget[i] -= min(budget[i], rho)
        chosen.append(c)
    return frozenset(chosen)
