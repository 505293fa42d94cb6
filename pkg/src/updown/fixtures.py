"""Canonical elections shared by tests, examples and the CLI.

``INTRO`` is the 30-candidate, 12-voter running example with three blocks of
ten candidates.  Voter and candidate sets below are 0-based indices.
"""

from updown.core import validate_election

FIX_A = validate_election(
    ["a", "b"], ["v1", "v2", "v3"], 1,
    [(["a"], []), ([], ["a"]), (["b"], [])],
)

FIX_B = validate_election(
    ["a", "b", "c"], ["v1", "v2", "v3", "v4"], 2,
    [(["a"], []), (["a"], []), (["b"], ["a"]), (["b"], [])],
)

C1 = frozenset(range(0, 10))
C2 = frozenset(range(10, 20))
C3 = frozenset(range(20, 30))

V1 = frozenset(range(0, 5))
# the second voter block is used both without and with voter 12
V2A = frozenset(range(5, 11))
V2B = frozenset(range(5, 12))

# vetoes on C2, keyed by 1-based voter, as (first, second) candidate pairs
_C2_VETOES = {
    (11, 12): (1, 5),
    (13, 14): (1, 2),
    (15, 16): (2, 3),
    (17, 18): (3, 4),
    (19, 20): (4, 5),
}


def _intro():
    cands = [f"c{j}" for j in range(1, 31)]
    voters = [f"v{i}" for i in range(1, 13)]
    approve = {i: [] for i in range(1, 13)}
    disapprove = {i: [] for i in range(1, 13)}
    for j in range(1, 11):
        for i in range(1, 6):
            disapprove[i].append(f"c{j}")
        for i in range(6, 13):
            approve[i].append(f"c{j}")
    for pair, vetoers in _C2_VETOES.items():
        for j in pair:
            for i in range(6, 12):
                approve[i].append(f"c{j}")
            for i in vetoers:
                disapprove[i].append(f"c{j}")
    for j in range(21, 31):
        for i in range(1, 6):
            approve[i].append(f"c{j}")
        disapprove[12].append(f"c{j}")
    ballots = [(approve[i], disapprove[i]) for i in range(1, 13)]
    return validate_election(cands, voters, 10, ballots)


INTRO = _intro()

FIXTURES = {"intro": INTRO, "fix-a": FIX_A, "fix-b": FIX_B}
