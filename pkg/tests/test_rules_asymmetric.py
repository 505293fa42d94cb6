from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given

from conftest import elections
from updown import classic
from updown.axioms import audit_ejpr, positive_cohesion_level
from updown.core import election_from_indices
from updown.errors import BadParams, GuardExceeded, NoViolationPossible, ValidationError
from updown.fixtures import C1, C2, C3, FIX_B, INTRO
from updown.rules_asymmetric import (
    EXCLUDED,
    ThieleScoring,
    counterexample_parameters,
    opposition_price,
    pav_scoring,
    tax_mes,
    tax_phragmen,
    thiele_counterexample,
    thiele_optimize,
    veto_penalty_scoring,
)
from updown.rules_symmetric import harmonic, pav_exact

A, B, C = 0, 1, 2
INTRO_PICKS = {10, 11, 12, 20, 21, 22}


def test_opposition_prices():
    assert {opposition_price(INTRO, c) for c in C1} == {Fraction(7, 2)}
    assert {opposition_price(INTRO, c) for c in C2} == {Fraction(3, 2)}
    assert {opposition_price(INTRO, c) for c in C3} == {Fraction(5, 4)}
    e = election_from_indices(1, 1, [({0}, set()), (set(), {0})])
    assert opposition_price(e, 0) is EXCLUDED


def test_tax_mes_fix_b():
    o, ledger = tax_mes(FIX_B)
    assert o.selected == {B} and not o.vetoed
    assert ledger.events == [(Fraction(1, 2), B)]
    assert ledger.residual == (Fraction(1, 2), Fraction(1, 2), 0, 0)


def test_tax_mes_intro():
    o, ledger = tax_mes(INTRO)
    assert o.selected == INTRO_PICKS
    assert [c for _, c in ledger.events] == [10, 11, 12, 20, 21, 22]
    assert all(rho == Fraction(1, 4) for rho, _ in ledger.events)
    assert ledger.initial_budget == Fraction(5, 6)
    assert ledger.residual == (Fraction(1, 12),) * 11 + (Fraction(5, 6),)
    assert ledger.violations(INTRO) == []


def test_tax_mes_completion():
    o, _ = tax_mes(INTRO, complete=True)
    assert len(o.selected) == 10
    assert INTRO_PICKS < o.selected
    # unelected C2 and C3 members tie at net approval 4; C1 has 2
    assert o.selected - INTRO_PICKS == {13, 14, 15, 16}


def test_tax_rules_empty_pool():
    e = election_from_indices(2, 1, [(set(), {0, 1})])
    assert tax_mes(e)[0].selected == frozenset()
    assert tax_phragmen(e)[0].selected == frozenset()


def test_tax_phragmen_intro():
    o, ledger = tax_phragmen(INTRO)
    assert o.selected == INTRO_PICKS
    assert ledger.events == [
        (Fraction(1, 4), 10), (Fraction(1, 4), 20),
        (Fraction(1, 2), 11), (Fraction(1, 2), 21),
        (Fraction(3, 4), 12), (Fraction(3, 4), 22),
    ]
    assert ledger.violations(INTRO) == []


def test_tax_phragmen_fix_b():
    o, ledger = tax_phragmen(FIX_B)
    assert o.selected == {B}
    assert ledger.events == [(Fraction(1, 2), B)]


def test_tax_phragmen_uncapped_keeps_buying():
    o, ledger = tax_phragmen(FIX_B, uncapped=True)
    assert o.selected == {A, B}
    assert ledger.events == [(Fraction(1, 2), B), (Fraction(1), A)]
    assert ledger.violations(FIX_B) == []


@given(elections(max_n=6, max_m=6))
def test_ledgers_balance(e):
    for ledger, o in ((tax_mes(e)[1], tax_mes(e)[0]), (tax_phragmen(e)[1], tax_phragmen(e)[0]),
                      (tax_phragmen(e, uncapped=True)[1], tax_phragmen(e, uncapped=True)[0])):
        assert ledger.violations(e) == []
        assert set(ledger.prices) == o.selected
        for c in o.selected:
            assert e.supporter_masks[c].bit_count() > e.opponent_masks[c].bit_count()


@given(elections(max_n=6, max_m=6, vetoes=False))
def test_tax_mes_matches_classic_without_vetoes(e):
    assert tax_mes(e)[0].selected == classic.equal_shares(e)


@given(elections(max_n=6, max_m=6, vetoes=False))
def test_tax_phragmen_is_truncated_phragmen_without_vetoes(e):
    o, ledger = tax_phragmen(e)
    full = classic.sequential_phragmen(e)
    assert o.selected <= full
    if ledger.events:
        assert ledger.events[-1][0] <= Fraction(e.k, e.n)


def test_scoring_checks():
    assert pav_scoring().check(4) == []
    assert veto_penalty_scoring(2).check(4) == []
    bad = ThieleScoring.from_table([[0, 1], [1, 1]])
    assert bad.check() == ["f(0,1) > f(0,0)"]
    with pytest.raises(ValidationError):
        ThieleScoring.from_table([[0, 1]])
    with pytest.raises(ValidationError):
        ThieleScoring.from_table([[0]]).value(1, 0)


def test_thiele_fix_b():
    assert thiele_optimize(FIX_B, pav_scoring()).selected == {A, B}
    assert thiele_optimize(FIX_B, veto_penalty_scoring()).selected == {A, B}


def test_thiele_penalty_can_drop_a_seat():
    # dropping a beats keeping it; c fills the seat at zero score
    o = thiele_optimize(FIX_B, veto_penalty_scoring(3))
    assert o.selected == {B, C}


def test_thiele_single_voter():
    e = election_from_indices(2, 1, [({0}, set())])
    assert thiele_optimize(e, pav_scoring()).selected == {0}


def test_thiele_guard():
    with pytest.raises(GuardExceeded):
        thiele_optimize(INTRO, pav_scoring())


def _brute_thiele(e, f):
    best = None
    for size in range(e.k + 1):
        for combo in combinations(range(e.m), size):
            w = set(combo)
            score = sum(f.value(len(w & b.approve), len(w & b.disapprove)) for b in e.ballots)
            key = (-score, -size, combo)
            best = key if best is None or key < best else best
    return frozenset(best[2])


@given(elections(max_n=5, max_m=5))
def test_thiele_matches_brute_force(e):
    f = veto_penalty_scoring(Fraction(1, 2))
    assert thiele_optimize(e, f).selected == _brute_thiele(e, f)


@given(elections(max_n=5, max_m=6, vetoes=False))
def test_thiele_harmonic_is_pav_without_vetoes(e):
    assert thiele_optimize(e, pav_scoring()).selected == pav_exact(e).selected


def test_counterexample_construction():
    f = veto_penalty_scoring()
    assert counterexample_parameters(f, 1, 1) == (1, 1, 2)
    e = thiele_counterexample(f, 1, 1, n_base=3)
    assert (e.m, e.k, e.n) == (9, 9, 3)
    v1 = {0, 1}
    assert positive_cohesion_level(e, v1) == 3
    o = thiele_optimize(e, f)
    report = audit_ejpr(e, o)
    assert not report.passed
    assert any(w.group == v1 and w.required == 3 for w in report.witnesses)


def test_counterexample_scales_with_n():
    e = thiele_counterexample(veto_penalty_scoring(), 1, 1, n_base=6)
    assert e.n == 6 and not audit_ejpr(e, thiele_optimize(e, veto_penalty_scoring())).passed


def test_counterexample_impossible_for_harmonic():
    with pytest.raises(NoViolationPossible):
        thiele_counterexample(pav_scoring())
    with pytest.raises(NoViolationPossible):
        thiele_counterexample(pav_scoring(), 2, 1)


def test_counterexample_bad_params():
    with pytest.raises(BadParams):
        thiele_counterexample(veto_penalty_scoring(), 1, 1, n_base=4)
    with pytest.raises(BadParams):
        counterexample_parameters(veto_penalty_scoring(), 1, 0)


def test_counterexample_small_gap_needs_larger_t():
    f = veto_penalty_scoring(Fraction(1, 10))
    z, s, t = counterexample_parameters(f, 0, 1)
    # gap 1/10 must exceed 2/t
    assert t == 21
    assert Fraction(1, 10) > Fraction(2, t) and not Fraction(1, 10) > Fraction(2, t - 1)


def test_harmonic_table_values():
    f = pav_scoring()
    assert f.as_table(2) == [[0, 0, 0], [1, 1, 1], [harmonic(2)] * 3]
