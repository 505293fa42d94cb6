"""Rules for the asymmetric model, where only elected approved candidates count.

Opposition is expressed through prices: candidate ``c`` costs
``|A_c| / (|A_c| - |D_c|)`` and is dropped when it has no net support.
Tax-MES and Tax-Phragmén run the usual priceable rules on these prices.
Generalized Thiele rules score committees by a table ``f(z, s)`` of
approved and disapproved members per voter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from updown.core import Election, ExtendedOutcome, committee_key, indices_of, validate_election
from updown.errors import BadParams, GuardExceeded, NoViolationPossible, ValidationError
from updown.rules_symmetric import earliest_time, harmonic

DEFAULT_THIELE_GUARD = 20

# Returned by opposition_price for candidates outside the priced pool.
EXCLUDED = None


def opposition_price(e: Election, c: int):
    """Price of ``c``, or :data:`EXCLUDED` when ``|A_c| <= |D_c|``."""
    a = e.supporter_masks[c].bit_count()
    d = e.opponent_masks[c].bit_count()
    if a <= d:
        return EXCLUDED
    return Fraction(a, a - d)


@dataclass
class PaymentLedger:
    """Payments certifying a priceable outcome.

    ``initial_budget`` is the per-voter money available over the whole run.
    ``events`` lists ``(key, candidate)`` in purchase order, where the key
    is ``rho`` for MES and the purchase time for Phragmén.
    """

    initial_budget: Fraction
    prices: dict = field(default_factory=dict)
    payments: dict = field(default_factory=dict)
    residual: tuple = ()
    events: list = field(default_factory=list)

    def paid_for(self, c: int) -> Fraction:
        return sum((p for (_, cc), p in self.payments.items() if cc == c), Fraction(0))

    def spent_by(self, i: int) -> Fraction:
        return sum((p for (ii, _), p in self.payments.items() if ii == i), Fraction(0))

    def violations(self, e: Election) -> list:
        """Broken ledger invariants, as human-readable strings."""
        out = []
        for (i, c), p in self.payments.items():
            if p < 0:
                out.append(f"negative payment by voter {i} for {c}")
            if p > 0 and c not in e.ballots[i].approve:
                out.append(f"voter {i} pays for {c} without approving it")
        for c, price in self.prices.items():
            if self.paid_for(c) != price:
                out.append(f"payments for {c} total {self.paid_for(c)}, price {price}")
        for i in range(e.n):
            if self.residual[i] != self.initial_budget - self.spent_by(i):
                out.append(f"residual of voter {i} does not balance")
            if self.residual[i] < 0:
                out.append(f"voter {i} overspent")
        return out


def _solve_rho(budgets: list, price: Fraction):
    """Smallest ``rho`` with ``sum(min(b, rho)) == price``; None if unaffordable."""
    if sum(budgets, Fraction(0)) < price:
        return None
    ordered = sorted(budgets)
    remaining = price
    for j, b in enumerate(ordered):
        rho = remaining / (len(ordered) - j)
        if rho <= b:
            return rho
        remaining -= b
    return ordered[-1]


def _priced_pool(e: Election) -> dict:
    prices = {}
    for c in range(e.m):
        p = opposition_price(e, c)
        if p is not EXCLUDED:
            prices[c] = p
    return prices


def tax_mes(e: Election, complete: bool = False):
    """Method of Equal Shares on opposition-taxed prices with budget ``k/n``.

    Returns ``(outcome, ledger)``; ``vetoed`` is empty.  With ``complete``
    the leftover seats go to unelected priced candidates by net approval
    ``|A_c| - |D_c|`` (ties by index); completion purchases are unpaid.
    """
    pool = _priced_pool(e)
    budget = [Fraction(e.k, e.n)] * e.n
    ledger = PaymentLedger(initial_budget=Fraction(e.k, e.n))
    selected: list = []
    while len(selected) < e.k:
        best = None
        for c, price in pool.items():
            if c in selected:
                continue
            group = sorted(indices_of(e.supporter_masks[c]))
            rho = _solve_rho([budget[i] for i in group], price)
            if rho is not None and (best is None or (rho, c) < best[:2]):
                best = (rho, c, group)
        if best is None:
            break
        rho, c, group = best
        for i in group:
            pay = min(budget[i], rho)
            if pay:
                ledger.payments[(i, c)] = pay
                budget[i] -= pay
        ledger.prices[c] = pool[c]
        ledger.events.append((rho, c))
        selected.append(c)
    if complete:
        rest = sorted(
            (c for c in pool if c not in selected),
            key=lambda c: (-(e.supporter_masks[c].bit_count() - e.opponent_masks[c].bit_count()), c),
        )
        selected.extend(rest[: e.k - len(selected)])
    ledger.residual = tuple(budget)
    return ExtendedOutcome(frozenset(selected)), ledger


def tax_phragmen(e: Election, uncapped: bool = False):
    """Phragmén on opposition-taxed prices with lifetime income capped at ``k/n``.

    Returns ``(outcome, ledger)``.  Uncapped runs report the income earned
    up to the last purchase as ``initial_budget``.
    """
    pool = _priced_pool(e)
    cap = None if uncapped else Fraction(e.k, e.n)
    spent = [Fraction(0)] * e.n
    ledger = PaymentLedger(initial_budget=cap if cap is not None else Fraction(0))
    selected: list = []
    now = Fraction(0)
    while len(selected) < e.k:
        best = None
        for c, price in pool.items():
            if c in selected:
                continue
            t = earliest_time(e.supporter_masks[c], price, spent, cap)
            if t is not None and (best is None or (t, c) < best):
                best = (t, c)
        if best is None:
            break
        t, c = best
        assert t >= now
        now = t
        for i in indices_of(e.supporter_masks[c]):
            pay = t - spent[i]
            if pay:
                ledger.payments[(i, c)] = pay
            spent[i] = t
        ledger.prices[c] = pool[c]
        ledger.events.append((t, c))
        selected.append(c)
    if cap is None:
        ledger.initial_budget = now
    ledger.residual = tuple(ledger.initial_budget - s for s in spent)
    return ExtendedOutcome(frozenset(selected)), ledger


class ThieleScoring:
    """Score ``f(z, s)`` of a voter with ``z`` approved and ``s`` disapproved members.

    Backed either by a finite table (rows ``z``, columns ``s``) or by a
    callable defined for every pair.
    """

    def __init__(self, fn: Callable | None = None, table=None, name: str = "f"):
        if (fn is None) == (table is None):
            raise ValueError("give exactly one of fn or table")
        self.name = name
        self._fn = fn
        self.table = None
        if table is not None:
            rows = [[Fraction(v) for v in row] for row in table]
            if not rows or any(len(r) != len(rows) for r in rows):
                raise ValidationError("scoring table must be square over (z, s)")
            self.table = rows

    @classmethod
    def from_table(cls, table, name="table"):
        return cls(table=table, name=name)

    @property
    def k(self):
        """Largest ``z`` and ``s`` covered, or None when unbounded."""
        return None if self.table is None else len(self.table) - 1

    def value(self, z: int, s: int) -> Fraction:
        if self.table is not None:
            if z > self.k or s > self.k:
                raise ValidationError(f"scoring table covers up to {self.k}, asked ({z}, {s})")
            return self.table[z][s]
        return Fraction(self._fn(z, s))

    def as_table(self, k: int) -> list:
        return [[self.value(z, s) for s in range(k + 1)] for z in range(k + 1)]

    def check(self, k: int | None = None) -> list:
        """Broken invariants over ``0..k``, as human-readable strings."""
        k = self.k if k is None else k
        out = []
        if self.value(0, 0) != 0:
            out.append("f(0,0) != 0")
        for z in range(k + 1):
            if z and self.value(z, 0) < self.value(z - 1, 0):
                out.append(f"f({z},0) < f({z - 1},0)")
            for s in range(1, k + 1):
                if self.value(z, s) > self.value(z, 0):
                    out.append(f"f({z},{s}) > f({z},0)")
        return out

    def __repr__(self):
        return f"ThieleScoring({self.name})"


def pav_scoring() -> ThieleScoring:
    return ThieleScoring(lambda z, s: harmonic(z), name="H(z)")


def veto_penalty_scoring(penalty=1) -> ThieleScoring:
    """``f(z, s) = H(z) - penalty * s``."""
    penalty = Fraction(penalty)
    return ThieleScoring(lambda z, s: harmonic(z) - penalty * s, name=f"H(z)-{penalty}s")


def thiele_optimize(e: Election, f: ThieleScoring, guard: int = DEFAULT_THIELE_GUARD) -> ExtendedOutcome:
    """Exhaustive argmax of ``sum_i f(|W & A_i|, |W & D_i|)`` over ``|W| <= k``."""
    if e.m > guard:
        raise GuardExceeded(f"Thiele enumerates 2^m committees; m={e.m} > guard {guard}")
    table = f.as_table(e.k)
    scale = math.lcm(*(v.denominator for row in table for v in row))
    itable = [[int(v * scale) for v in row] for row in table]
    best_mask, best_score = None, None
    for w in range(1 << e.m):
        if w.bit_count() > e.k:
            continue
        score = sum(itable[(a & w).bit_count()][(d & w).bit_count()]
                    for a, d in zip(e.approve_masks, e.disapprove_masks))
        if (best_score is None or score > best_score
                or (score == best_score
                    and committee_key(indices_of(w)) < committee_key(indices_of(best_mask)))):
            best_mask, best_score = w, score
    return ExtendedOutcome(indices_of(best_mask))


def counterexample_parameters(f: ThieleScoring, z=None, s=None, search: int = 12):
    """Return ``(z, s, t)`` for the EJPR counterexample against ``f``.

    ``t`` is the smallest integer above ``s`` with
    ``f(z,0) - f(z,s) > 2s / (t + z - s + 1)``.  Without ``z`` and ``s`` the
    first deficient pair in ``0..search`` (z) times ``1..search`` (s) is used.
    """
    if (z is None) != (s is None):
        raise BadParams("give both z and s or neither")
    if z is None:
        bound = search if f.k is None else min(search, f.k)
        pairs = [(zz, ss) for zz in range(bound + 1) for ss in range(1, bound + 1)]
    else:
        if s < 1 or z < 0:
            raise BadParams("need z >= 0 and s >= 1")
        pairs = [(z, s)]
    for zz, ss in pairs:
        gap = f.value(zz, 0) - f.value(zz, ss)
        if gap > 0:
            t = ss + 1
            while gap * (t + zz - ss + 1) <= 2 * ss:
                t += 1
            return zz, ss, t
    raise NoViolationPossible(f"{f.name}: f(z,s) = f(z,0) on every pair tried")


def thiele_counterexample(f: ThieleScoring, z=None, s=None, n_base: int = 3) -> Election:
    """Election on which the Thiele rule for ``f`` violates EJPR.

    ``t`` candidates ``t1..`` and ``z`` candidates ``p1..`` are approved by
    the first ``2n/3`` voters; the other ``n/3`` voters approve ``p1..`` and
    disapprove the last ``s`` of ``t1..``.  ``2(t+z)`` unapproved dummies pad
    the election to ``k = m = 3(t+z)``.
    """
    if n_base < 3 or n_base % 3:
        raise BadParams("n_base must be a positive multiple of 3")
    z, s, t = counterexample_parameters(f, z, s)
    tc = [f"t{j}" for j in range(1, t + 1)]
    pc = [f"p{j}" for j in range(1, z + 1)]
    dummies = [f"x{j}" for j in range(1, 2 * (t + z) + 1)]
    candidates = tc + pc + dummies
    n1 = 2 * n_base // 3
    voters = [f"v{j}" for j in range(1, n_base + 1)]
    ballots = [(tc + pc, [])] * n1 + [(pc, tc[t - s:])] * (n_base - n1)
    return validate_election(candidates, voters, 3 * (t + z), ballots)
