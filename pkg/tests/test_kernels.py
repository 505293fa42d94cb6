import pytest
from hypothesis import given, strategies as st

from updown import _kernels_py, kernels
from updown.rules_symmetric import scaled_harmonics

compiled = pytest.mark.skipif(kernels.BACKEND != "compiled", reason="compiled kernels not built")

masks = st.integers(0, (1 << 10) - 1)


def _brute_sweep(ma, mb, full):
    n = len(ma)
    out = ([], [], [], [])
    for s in range(1 << n):
        ia = ib = full
        ua = ub = 0
        for i in range(n):
            if s >> i & 1:
                ia &= ma[i]
                ib &= mb[i]
                ua |= ma[i]
                ub |= mb[i]
        for lst, v in zip(out, (ia, ib, ua, ub)):
            lst.append(v)
    return out


@given(st.lists(st.tuples(masks, masks), max_size=7))
def test_subset_sweep_python(pairs):
    ma = [a for a, _ in pairs]
    mb = [b for _, b in pairs]
    got = _kernels_py.subset_sweep(ma, mb, (1 << 10) - 1)
    assert tuple(got) == _brute_sweep(ma, mb, (1 << 10) - 1)


@compiled
@given(st.lists(st.tuples(masks, masks), max_size=8))
def test_subset_sweep_backends(pairs):
    ma = [a for a, _ in pairs]
    mb = [b for _, b in pairs]
    py = kernels.subset_sweep(ma, mb, 1023, backend="python")
    cc = kernels.subset_sweep(ma, mb, 1023, backend="compiled")
    assert [list(x) for x in py] == [list(x) for x in cc]


@compiled
@given(st.integers(1, 7), st.data())
def test_extension_profile_backends(m, data):
    k = data.draw(st.integers(1, m))
    a = data.draw(st.integers(0, (1 << m) - 1))
    d = data.draw(st.integers(0, (1 << m) - 1)) & ~a
    assert (kernels.extension_profile(a, d, m, k, backend="python")
            == kernels.extension_profile(a, d, m, k, backend="compiled"))


@compiled
@given(st.integers(1, 8), st.data())
def test_pav_best_backends(m, data):
    k = data.draw(st.integers(1, m))
    n = data.draw(st.integers(1, 6))
    app = [data.draw(st.integers(0, (1 << m) - 1)) for _ in range(n)]
    dis = [data.draw(st.integers(0, (1 << m) - 1)) & ~a for a in app]
    w = scaled_harmonics(m)
    assert (kernels.pav_best(app, dis, m, k, w, backend="python")
            == kernels.pav_best(app, dis, m, k, w, backend="compiled"))


def test_wide_masks_fall_back():
    wide = [1 << 70, (1 << 70) | 1]
    got = kernels.subset_sweep(wide, wide, (1 << 71) - 1)
    assert got[0][3] == 1 << 70


def test_unknown_backend_name():
    with pytest.raises(ValueError):
        kernels.subset_sweep([], [], 0, backend="fortran")
