"""Election data model, extended outcomes and symmetric satisfaction.

Candidates and voters are addressed by their list index; identifiers only
matter at the I/O boundary.  All real-valued quantities are
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from updown.errors import (
    BallotOverlap,
    DuplicateIdentifier,
    EmptyGroup,
    KOutOfRange,
    UnknownCandidateInBallot,
    ValidationError,
)

Rational = Fraction


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class Ballot:
    approve: frozenset
    disapprove: frozenset

    def __post_init__(self):
        object.__setattr__(self, "approve", frozenset(self.approve))
        object.__setattr__(self, "disapprove", frozenset(self.disapprove))


class Sign(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"


@dataclass(frozen=True, order=True)
class SignedCandidate:
    """A candidate ``c`` or its negative counterpart ``not c``.

    Ordering is (index, positive before negative), which is the global
    tie-break order over purchasable items.
    """

    index: int
    negative: bool = False

    @property
    def sign(self) -> Sign:
        return Sign.NEGATIVE if self.negative else Sign.POSITIVE

    def counterpart(self) -> "SignedCandidate":
        return SignedCandidate(self.index, not self.negative)

    def label(self, e: "Election | None" = None) -> str:
        name = e.candidates[self.index] if e is not None else str(self.index)
        return ("-" if self.negative else "+") + name


@dataclass(frozen=True)
class Election:
    candidates: tuple
    voters: tuple
    k: int
    ballots: tuple

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return len(self.candidates)

    @cached_property
    def approve_masks(self) -> tuple:
        """Per voter, bitmask of approved candidates."""
        return tuple(mask_of(b.approve) for b in self.ballots)

    @cached_property
    def disapprove_masks(self) -> tuple:
        return tuple(mask_of(b.disapprove) for b in self.ballots)

    @cached_property
    def supporter_masks(self) -> tuple:
        """Per candidate, bitmask of voters approving it."""
        out = [0] * self.m
        for i, b in enumerate(self.ballots):
            for c in b.approve:
                out[c] |= 1 << i
        return tuple(out)

    @cached_property
    def opponent_masks(self) -> tuple:
        out = [0] * self.m
        for i, b in enumerate(self.ballots):
            for c in b.disapprove:
                out[c] |= 1 << i
        return tuple(out)

    @property
    def all_candidates_mask(self) -> int:
        return (1 << self.m) - 1

    @property
    def all_voters_mask(self) -> int:
        return (1 << self.n) - 1

    def candidate_index(self, name: str) -> int:
        try:
            return self._cand_pos[name]
        except KeyError:
            raise UnknownCandidateInBallot(f"unknown candidate {name!r}") from None

    def voter_index(self, name: str) -> int:
        try:
            return self._voter_pos[name]
        except KeyError:
            raise ValidationError(f"unknown voter {name!r}") from None

    @cached_property
    def _cand_pos(self) -> dict:
        return {c: j for j, c in enumerate(self.candidates)}

    @cached_property
    def _voter_pos(self) -> dict:
        return {v: i for i, v in enumerate(self.voters)}

    def has_vetoes(self) -> bool:
        return any(self.disapprove_masks)


@dataclass(frozen=True)
class ExtendedOutcome:
    """Selected positive candidates plus explicitly vetoed ones.

    ``vetoed`` holds the positive indices whose negative counterparts belong
    to the outcome.
    """

    selected: frozenset = frozenset()
    vetoed: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "selected", frozenset(self.selected))
        object.__setattr__(self, "vetoed", frozenset(self.vetoed))

    @property
    def size(self) -> int:
        return len(self.selected) + len(self.vetoed)

    def items(self) -> list:
        out = [SignedCandidate(c) for c in self.selected]
        out += [SignedCandidate(c, True) for c in self.vetoed]
        return sorted(out)


def _unique(names: Sequence, what: str) -> tuple:
    seen = set()
    for x in names:
        if x in seen:
            raise DuplicateIdentifier(f"duplicate {what} identifier {x!r}")
        seen.add(x)
    return tuple(names)


def validate_election(candidates, voters, k, ballots) -> Election:
    """Build an :class:`Election` from identifiers.

    ``ballots`` is a sequence aligned with ``voters`` whose items are
    ``(approve, disapprove)`` pairs of candidate identifiers.
    """
    cands = _unique([str(c) for c in candidates], "candidate")
    vots = _unique([str(v) for v in voters], "voter")
    if not cands:
        raise ValidationError("at least one candidate is required")
    if not vots:
        raise ValidationError("at least one voter is required")
    if isinstance(k, bool) or not isinstance(k, int):
        raise KOutOfRange(f"k must be an integer, got {k!r}")
    if not 1 <= k <= len(cands):
        raise KOutOfRange(f"k={k} outside 1..{len(cands)}")
    ballots = list(ballots)
    if len(ballots) != len(vots):
        raise ValidationError(f"{len(ballots)} ballots for {len(vots)} voters")
    pos = {c: j for j, c in enumerate(cands)}
    out = []
    for v, (approve, disapprove) in zip(vots, ballots):
        a, d = set(), set()
        for dest, names in ((a, approve), (d, disapprove)):
            for name in names:
                name = str(name)
                if name not in pos:
                    raise UnknownCandidateInBallot(
                        f"voter {v!r} names unknown candidate {name!r}")
                dest.add(pos[name])
        both = a & d
        if both:
            names = sorted(cands[j] for j in both)
            raise BallotOverlap(f"voter {v!r} approves and disapproves {names}")
        out.append(Ballot(frozenset(a), frozenset(d)))
    return Election(cands, vots, k, tuple(out))


def election_from_indices(m: int, k: int, ballots, candidates=None, voters=None) -> Election:
    """Convenience constructor from index-based ``(approve, disapprove)`` pairs."""
    cands = candidates or [f"c{j + 1}" for j in range(m)]
    ballots = list(ballots)
    vots = voters or [f"v{i + 1}" for i in range(len(ballots))]
    named = [([cands[j] for j in a], [cands[j] for j in d]) for a, d in ballots]
    return validate_election(cands, vots, k, named)


def tally(e: Election, c: int):
    """Return ``(supporters, opponents)`` of candidate ``c`` as voter sets."""
    if not 0 <= c < e.m:
        raise IndexError(f"candidate index {c} out of range")
    return indices_of(e.supporter_masks[c]), indices_of(e.opponent_masks[c])


def _group_mask(e: Election, S) -> int:
    S = frozenset(S)
    if not S:
        raise EmptyGroup("voter group must be nonempty")
    for i in S:
        if not 0 <= i < e.n:
            raise IndexError(f"voter index {i} out of range")
    return mask_of(S)


def common_masks(e: Election, smask: int):
    a = d = e.all_candidates_mask
    i = 0
    while smask:
        if smask & 1:
            a &= e.approve_masks[i]
            d &= e.disapprove_masks[i]
        smask >>= 1
        i += 1
    return a, d


def common_sets(e: Election, S):
    """Candidates commonly approved and commonly disapproved by ``S``."""
    a, d = common_masks(e, _group_mask(e, S))
    return indices_of(a), indices_of(d)


def approvers_of_set(e: Election, T) -> frozenset:
    """Voters approving at least one candidate of ``T``."""
    out = 0
    for c in T:
        out |= e.supporter_masks[c]
    return indices_of(out)


def is_feasible(o: ExtendedOutcome, e: Election) -> bool:
    if len(o.selected) > e.k or (o.selected & o.vetoed):
        return False
    return all(0 <= c < e.m for c in o.selected | o.vetoed)


def satisfaction(e: Election, o: ExtendedOutcome, i: int) -> int:
    b = e.ballots[i]
    return len(b.approve & o.selected) + len(b.disapprove & o.vetoed)


def avg_satisfaction(e: Election, o: ExtendedOutcome, S) -> Fraction:
    S = frozenset(S)
    if not S:
        raise EmptyGroup("voter group must be nonempty")
    return Fraction(sum(satisfaction(e, o, i) for i in S), len(S))


def maximal_completion(o: ExtendedOutcome, e: Election) -> ExtendedOutcome:
    """Veto every candidate that is not selected."""
    rest = frozenset(range(e.m)) - o.selected
    if rest == o.vetoed:
        return o
    return ExtendedOutcome(o.selected, rest)


def committee_key(selected) -> tuple:
    """Sort key of the global committee order: larger first, then lexicographic."""
    s = tuple(sorted(selected))
    return (-len(s), s)
