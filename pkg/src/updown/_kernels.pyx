# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``.

Masks are 64-bit; the selector only routes here when every mask fits and
integer scores cannot overflow.
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64


cdef extern from *:
    int popcount "__builtin_popcountll"(u64 x) nogil
    int ctz "__builtin_ctzll"(u64 x) nogil


def subset_sweep(masks_a, masks_b, full):
    cdef Py_ssize_t n = len(masks_a)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef u64 *ia = <u64 *>malloc(size * sizeof(u64))
    cdef u64 *ib = <u64 *>malloc(size * sizeof(u64))
    cdef u64 *ua = <u64 *>malloc(size * sizeof(u64))
    cdef u64 *ub = <u64 *>malloc(size * sizeof(u64))
    cdef u64 *ma = <u64 *>malloc((n + 1) * sizeof(u64))
    cdef u64 *mb = <u64 *>malloc((n + 1) * sizeof(u64))
    cdef Py_ssize_t s, r, i
    cdef u64 low
    if not ia or not ib or not ua or not ub or not ma or not mb:
        free(ia); free(ib); free(ua); free(ub); free(ma); free(mb)
        raise MemoryError()
    try:
        for i in range(n):
            ma[i] = <u64>masks_a[i]
            mb[i] = <u64>masks_b[i]
        ia[0] = <u64>full
        ib[0] = <u64>full
        ua[0] = 0
        ub[0] = 0
        with nogil:
            for s in range(1, size):
                low = (<u64>s) & (~(<u64>s) + 1)
                i = ctz(low)
                r = s ^ <Py_ssize_t>low
                ia[s] = ia[r] & ma[i]
                ib[s] = ib[r] & mb[i]
                ua[s] = ua[r] | ma[i]
                ub[s] = ub[r] | mb[i]
        return ([ia[s] for s in range(size)], [ib[s] for s in range(size)],
                [ua[s] for s in range(size)], [ub[s] for s in range(size)])
    finally:
        free(ia); free(ib); free(ua); free(ub); free(ma); free(mb)


def extension_profile(a_mask, d_mask, int m, int k):
    cdef u64 am = <u64>a_mask
    cdef u64 dm = <u64>d_mask
    cdef int na = popcount(am)
    cdef int nd = popcount(dm)
    cdef int *best = <int *>malloc((m + 1) * sizeof(int))
    cdef unsigned char *digits = <unsigned char *>malloc((m + 1) * sizeof(unsigned char))
    cdef u64 plus = 0, minus = 0, bit
    cdef int np_, ext, t, j, avail, held
    if not best or not digits:
        free(best); free(digits)
        raise MemoryError()
    try:
        for j in range(m + 1):
            best[j] = -1
            digits[j] = 0
        with nogil:
            while True:
                np_ = popcount(plus)
                if np_ <= k:
                    held = popcount(am & plus)
                    avail = na - held - popcount(am & minus)
                    ext = nd - popcount(dm & plus) + held
                    ext += avail if avail < k - np_ else k - np_
                    t = np_ + popcount(minus)
                    if best[t] < 0 or ext < best[t]:
                        best[t] = ext
                j = 0
                while j < m:
                    bit = (<u64>1) << j
                    if digits[j] == 0:
                        digits[j] = 1
                        plus |= bit
                        break
                    if digits[j] == 1:
                        digits[j] = 2
                        plus &= ~bit
                        minus |= bit
                        break
                    digits[j] = 0
                    minus &= ~bit
                    j += 1
                if j == m:
                    break
        return [best[j] for j in range(m + 1)]
    finally:
        free(best); free(digits)


def pav_best(approve, disapprove, int m, int k, weights):
    cdef Py_ssize_t n = len(approve)
    cdef Py_ssize_t nw = len(weights)
    cdef u64 *am = <u64 *>malloc((n + 1) * sizeof(u64))
    cdef u64 *dm = <u64 *>malloc((n + 1) * sizeof(u64))
    cdef long long *wt = <long long *>malloc((nw + 1) * sizeof(long long))
    cdef u64 w, limit = (<u64>1) << m, best_mask = 0, diff
    cdef long long score, best_score = -1
    cdef int size, best_size = -1
    cdef Py_ssize_t i
    cdef bint better
    if not am or not dm or not wt:
        free(am); free(dm); free(wt)
        raise MemoryError()
    try:
        for i in range(n):
            am[i] = <u64>approve[i]
            dm[i] = <u64>disapprove[i]
        for i in range(nw):
            wt[i] = <long long>weights[i]
        with nogil:
            w = 0
            while w < limit:
                size = popcount(w)
                if size <= k:
                    score = 0
                    for i in range(n):
                        score += wt[popcount(am[i] & w) + popcount(dm[i] & ~w)]
                    better = score > best_score
                    if not better and score == best_score:
                        if size > best_size:
                            better = True
                        elif size == best_size:
                            diff = w ^ best_mask
                            better = (diff & (~diff + 1) & w) != 0
                    if better:
                        best_mask = w
                        best_score = score
                        best_size = size
                w += 1
        return best_mask, best_score
    finally:
        free(am); free(dm); free(wt)
