"""Pure-Python implementations of the hot kernels.

Signatures match the compiled ``_kernels`` extension exactly; the selector in
:mod:`updown.kernels` picks one at import time.
"""


def subset_sweep(masks_a, masks_b, full):
    """Intersections and unions over every subset of the indexed items.

    For item masks ``masks_a[i]`` and ``masks_b[i]`` returns four lists
    indexed by subset bitmask ``s``: the intersection of ``masks_a`` over
    ``s``, the intersection of ``masks_b``, the union of ``masks_a`` and the
    union of ``masks_b``.  The empty subset maps to ``(full, full, 0, 0)``.
    """
    n = len(masks_a)
    size = 1 << n
    ia = [full] * size
    ib = [full] * size
    ua = [0] * size
    ub = [0] * size
    for s in range(1, size):
        low = s & -s
        i = low.bit_length() - 1
        r = s ^ low
        ia[s] = ia[r] & masks_a[i]
        ib[s] = ib[r] & masks_b[i]
        ua[s] = ua[r] | masks_a[i]
        ub[s] = ub[r] | masks_b[i]
    return ia, ib, ua, ub


def extension_profile(a_mask, d_mask, m, k):
    """Minimum extension size per partial-outcome size.

    Enumerates every feasible partial outcome ``T`` (each candidate is in
    ``T+``, in ``T-`` or absent, with ``|T+| <= k``) and returns a list whose
    entry ``t`` is the minimum over ``|T| = t`` of the largest extension
    ``|D - T+| + |A & T+| + min(|A - T+ - T-|, k - |T+|)``, or ``-1`` if no
    such ``T`` exists.  Items of ``A`` already in ``T+`` count without using a
    seat.
    """
    na = a_mask.bit_count()
    nd = d_mask.bit_count()
    best = [-1] * (m + 1)
    # odometer over base-3 digits: 0 absent, 1 in T+, 2 in T-
    digits = [0] * m
    plus = minus = 0
    while True:
        np_ = plus.bit_count()
        if np_ <= k:
            held = (a_mask & plus).bit_count()
            ext = nd - (d_mask & plus).bit_count() + held
            ext += min(na - held - (a_mask & minus).bit_count(), k - np_)
            t = np_ + minus.bit_count()
            if best[t] < 0 or ext < best[t]:
                best[t] = ext
        j = 0
        while j < m:
            bit = 1 << j
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
            return best


def _lex_less(a, b):
    # among equal-size sets, sorted index sequence of a precedes that of b
    diff = a ^ b
    return bool(diff & -diff & a)


def pav_best(approve, disapprove, m, k, weights):
    """Exhaustive PAV over selected sets of size ``<= k``.

    ``weights[x]`` is the integer-scaled harmonic number of ``x``; a voter
    contributes ``weights[|A & W| + |D \\ W|]``.  Returns
    ``(best_mask, best_score)`` under the global committee order (higher
    score, then larger size, then lexicographically smaller).
    """
    best_mask = -1
    best_score = -1
    best_size = -1
    for w in range(1 << m):
        size = w.bit_count()
        if size > k:
            continue
        score = 0
        for a, d in zip(approve, disapprove):
            score += weights[(a & w).bit_count() + (d & ~w).bit_count()]
        if (score > best_score
                or (score == best_score and size > best_size)
                or (score == best_score and size == best_size
                    and _lex_less(w, best_mask))):
            best_mask, best_score, best_size = w, score, size
    return best_mask, best_score
