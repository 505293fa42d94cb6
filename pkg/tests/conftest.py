import os

from hypothesis import settings, strategies as st

from updown.core import election_from_indices

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def elections(draw, max_n=5, max_m=5, vetoes=True):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    k = draw(st.integers(1, m))
    marks = st.sampled_from((0, 1, 2) if vetoes else (0, 1))
    ballots = []
    for _ in range(n):
        row = draw(st.lists(marks, min_size=m, max_size=m))
        ballots.append(({c for c, x in enumerate(row) if x == 1},
                         {c for c, x in enumerate(row) if x == 2}))
    return election_from_indices(m, k, ballots)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
