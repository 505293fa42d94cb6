import math
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from conftest import elections
from updown import kernels
from updown.claims import (
    claim_formula,
    claim_int,
    claim_oracle,
    claim_upper_bound,
    claim_value,
    cohesion_from_profile,
    integer_entitlement,
    max_extension_size,
)
from updown.core import ExtendedOutcome, common_sets, election_from_indices, is_feasible
from updown.errors import EmptyGroup, GuardExceeded, InfeasibleT
from updown.fixtures import C1, FIX_A, INTRO, V1, V2A


def test_intro_entitlements():
    g = claim_formula(INTRO, V1)
    assert (g.formula_value, g.case_index, g.entitlement) == (Fraction(100, 19), 2, 5)
    g = claim_formula(INTRO, V2A)
    assert (g.formula_value, g.case_index, g.entitlement) == (5, 3, 5)
    g = claim_formula(INTRO, range(12))
    assert (g.a_s, g.d_s, g.case_index, g.formula_value) == (0, 0, 5, 0)
    assert claim_int(INTRO, V1) == claim_int(INTRO, V2A) == 5


def test_singleton_without_opinions():
    e = election_from_indices(2, 1, [(set(), set()), ({0}, set())])
    assert claim_int(e, {0}) == 0


def test_upper_bound_values():
    assert claim_upper_bound(INTRO, V1) == Fraction(25, 3)
    assert claim_upper_bound(INTRO, range(12)) == 0
    assert claim_upper_bound(FIX_A, {1}) == Fraction(1, 3)


def test_empty_group_rejected():
    with pytest.raises(EmptyGroup):
        claim_formula(FIX_A, [])


def test_max_extension_examples():
    assert max_extension_size(INTRO, V1, ExtendedOutcome()) == 20
    assert max_extension_size(INTRO, V1, ExtendedOutcome(C1)) == 0
    assert max_extension_size(FIX_A, {1}, ExtendedOutcome({0})) == 0
    with pytest.raises(InfeasibleT):
        max_extension_size(FIX_A, {1}, ExtendedOutcome({0}, {0}))


def test_oracle_small_cases():
    assert claim_oracle(FIX_A, {1}) == 0
    e = election_from_indices(2, 1, [(set(), set()), (set(), set())])
    assert claim_oracle(e, {0, 1}) == 0
    with pytest.raises(GuardExceeded):
        claim_oracle(INTRO, V1)


# Entitlements above floor(formula), confirmed by the 3^m oracle.
@pytest.mark.parametrize("n, m, k, s, a, d, formula, exact", [
    (3, 1, 1, 2, 0, 1, Fraction(2, 3), 1),
    (3, 2, 1, 2, 1, 0, Fraction(2, 3), 1),
    (5, 3, 1, 4, 1, 2, Fraction(2), 3),
    (6, 4, 1, 5, 1, 3, Fraction(20, 7), 4),
    (7, 5, 1, 6, 1, 4, Fraction(15, 4), 5),
])
def test_entitlement_exceeds_floor(n, m, k, s, a, d, formula, exact):
    assert claim_value(n, m, k, s, a, d)[0] == formula
    assert integer_entitlement(n, m, k, s, a, d) == exact
    profile = kernels.extension_profile((1 << a) - 1, ((1 << d) - 1) << a, m, k)
    assert cohesion_from_profile(profile, s, n) == exact


def test_entitlement_matches_oracle_on_all_count_tuples():
    for n, m in product(range(1, 7), range(1, 6)):
        for k, s in product(range(1, m + 1), range(1, n + 1)):
            for a in range(m + 1):
                for d in range(m - a + 1):
                    profile = kernels.extension_profile((1 << a) - 1, ((1 << d) - 1) << a, m, k)
                    exact = integer_entitlement(n, m, k, s, a, d)
                    assert exact == cohesion_from_profile(profile, s, n), (n, m, k, s, a, d)
                    assert exact >= max(0, math.floor(claim_value(n, m, k, s, a, d)[0]))


def _brute_extension(e, S, T):
    """Largest X of commonly supported items with T + X feasible."""
    a_s, d_s = common_sets(e, S)
    items = [(c, False) for c in sorted(a_s)] + [(c, True) for c in sorted(d_s)]
    for size in range(len(items), -1, -1):
        for xs in combinations(items, size):
            sel = T.selected | {c for c, neg in xs if not neg}
            vet = T.vetoed | {c for c, neg in xs if neg}
            if is_feasible(ExtendedOutcome(sel, vet), e):
                return size
    return 0


@given(elections(max_n=4, max_m=5), st.data())
def test_max_extension_matches_brute_force(e, data):
    S = data.draw(st.frozensets(st.integers(0, e.n - 1), min_size=1))
    marks = data.draw(st.lists(st.sampled_from((0, 1, 2)), min_size=e.m, max_size=e.m))
    sel = frozenset(c for c, x in enumerate(marks) if x == 1)
    if len(sel) > e.k:
        sel = frozenset(sorted(sel)[: e.k])
    T = ExtendedOutcome(sel, frozenset(c for c, x in enumerate(marks) if x == 2))
    assert max_extension_size(e, S, T) == _brute_extension(e, S, T)


@given(elections(max_n=5, max_m=5), st.data())
def test_empty_partial_outcome_extension(e, data):
    S = data.draw(st.frozensets(st.integers(0, e.n - 1), min_size=1))
    a_s, d_s = common_sets(e, S)
    assert max_extension_size(e, S, ExtendedOutcome()) == len(d_s) + min(len(a_s), e.k)


@given(elections(max_n=5, max_m=5), st.data())
def test_claim_invariants(e, data):
    S = data.draw(st.frozensets(st.integers(0, e.n - 1), min_size=1))
    g = claim_formula(e, S)
    assert 0 <= g.entitlement <= g.d_s + min(e.k, g.a_s)
    assert g.entitlement >= math.floor(g.formula_value)
    assert 1 <= g.case_index <= 5
    assert claim_oracle(e, S) == g.entitlement


@given(elections(max_n=5, max_m=6), st.data())
def test_oracle_backends_agree(e, data):
    S = data.draw(st.frozensets(st.integers(0, e.n - 1), min_size=1))
    if kernels.BACKEND != "compiled":
        pytest.skip("compiled kernels not built")
    assert claim_oracle(e, S, backend="python") == claim_oracle(e, S, backend="compiled")
