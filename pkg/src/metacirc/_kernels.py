"""Bit-level enumeration kernels.

Codewords are stored as pairs of uint64 word arrays (a-part, b-part). The
full-sweep kernels require length <= 64 so that each part fits in one word;
the support-limited kernels work on any number of words.
"""

from __future__ import annotations

import numba
import numba.extending
import numba.types
import numpy as np


@numba.extending.intrinsic
def _ctpop(tyctx, x):
    if isinstance(x, numba.types.Integer):
        def impl(cgctx, builder, sig, args):
            return builder.ctpop(args[0])
        return x(x), impl


@numba.extending.intrinsic
def _cttz(tyctx, x):
    if isinstance(x, numba.types.Integer):
        def impl(cgctx, builder, sig, args):
            return builder.cttz(args[0], cgctx.get_constant(numba.types.boolean, True))
        return x(x), impl


@numba.njit(cache=True)
def popcount(x):
    return _ctpop(x)


@numba.njit(cache=True)
def _coset_start(ra, rb, top, low_bits):
    # codeword for v = top << low_bits (low part all zero)
    acc_a = np.uint64(0)
    acc_b = np.uint64(0)
    j = 0
    t = top
    while t:
        if t & 1:
            acc_a ^= ra[low_bits + j]
            acc_b ^= rb[low_bits + j]
        t >>= 1
        j += 1
    return acc_a, acc_b


@numba.njit(cache=True)
def _gray_coset(ra, rb, top, low_bits, counts):
    acc_a, acc_b = _coset_start(ra, rb, top, low_bits)
    counts[_ctpop(acc_a | acc_b)] += 1
    steps = np.uint64(1) << np.uint64(low_bits)
    i = np.uint64(1)
    while i < steps:
        bit = _cttz(i)
        acc_a ^= ra[bit]
        acc_b ^= rb[bit]
        counts[_ctpop(acc_a | acc_b)] += 1
        i += np.uint64(1)


@numba.njit(parallel=True, cache=True)
def gray_weight_counts(ra, rb, length, split_bits):
    """Weight counts over the F2-span of the rows via a reflected Gray walk.

    The selection space is split into 2**split_bits cosets on the top bits;
    each coset is walked independently and the per-coset tallies summed.
    """
    k = ra.shape[0]
    low_bits = k - split_bits
    n_cosets = 1 << split_bits
    per = np.zeros((n_cosets, length + 1), dtype=np.int64)
    for c in numba.prange(n_cosets):
        _gray_coset(ra, rb, c, low_bits, per[c])
    return per.sum(axis=0)


@numba.njit(cache=True)
def gray_min_weight(ra, rb, abort_below):
    """Smallest nonzero codeword weight by Gray walk.

    Returns (weight, selection mask). With abort_below > 0 the walk stops at
    the first codeword of weight below that threshold.
    """
    k = ra.shape[0]
    acc_a = np.uint64(0)
    acc_b = np.uint64(0)
    sel = np.uint64(0)
    best = 1 << 30
    best_sel = np.uint64(0)
    steps = np.uint64(1) << np.uint64(k)
    i = np.uint64(1)
    while i < steps:
        bit = _cttz(i)
        acc_a ^= ra[bit]
        acc_b ^= rb[bit]
        sel ^= np.uint64(1) << bit
        w = _ctpop(acc_a | acc_b)
        if w > 0 and w < best:
            best = w
            best_sel = sel
            if w < abort_below:
                break
        i += np.uint64(1)
    return best, best_sel


@numba.njit(cache=True)
def _row_weight(acc_a, acc_b):
    w = 0
    for t in range(acc_a.shape[0]):
        w += _ctpop(acc_a[t] | acc_b[t])
    return w


@numba.njit(cache=True)
def _first_combination(ra, rb, size, idx, pa, pb):
    nw = ra.shape[1]
    for p in range(size):
        idx[p] = p
        for t in range(nw):
            pa[p + 1, t] = pa[p, t] ^ ra[p, t]
            pb[p + 1, t] = pb[p, t] ^ rb[p, t]


@numba.njit(cache=True)
def _next_combination(ra, rb, size, idx, pa, pb):
    # lexicographic successor; prefix sums from the changed position on
    k, nw = ra.shape
    p = size - 1
    while p >= 0 and idx[p] == k - size + p:
        p -= 1
    if p < 0:
        return False
    idx[p] += 1
    for q in range(p + 1, size):
        idx[q] = idx[q - 1] + 1
    for q in range(p, size):
        r = idx[q]
        for t in range(nw):
            pa[q + 1, t] = pa[q, t] ^ ra[r, t]
            pb[q + 1, t] = pb[q, t] ^ rb[r, t]
    return True


@numba.njit(cache=True)
def level_min_weight(ra, rb, size, abort_below, witness):
    """Minimum nonzero weight over codewords built from exactly `size` rows.

    ra, rb have shape (rows, words). Subsets are visited in lexicographic
    order with prefix accumulators, so each step costs one row XOR per
    changed position. Stops early once a weight below abort_below is seen.
    The chosen row indices of the best codeword are written into witness.
    """
    k, nw = ra.shape
    best = 1 << 30
    if size == 0 or size > k:
        return best
    idx = np.empty(size, dtype=np.int64)
    pa = np.zeros((size + 1, nw), dtype=np.uint64)
    pb = np.zeros((size + 1, nw), dtype=np.uint64)
    _first_combination(ra, rb, size, idx, pa, pb)
    while True:
        w = _row_weight(pa[size], pb[size])
        if w > 0 and w < best:
            best = w
            for p in range(size):
                witness[p] = idx[p]
            if w < abort_below:
                return best
        if not _next_combination(ra, rb, size, idx, pa, pb):
            return best


@numba.njit(cache=True)
def level_weight_counts(ra, rb, size, counts):
    """Add the weights of all codewords built from exactly `size` rows.

    Weights beyond len(counts) - 1 are ignored.
    """
    k, nw = ra.shape
    if size == 0 or size > k:
        return
    top = counts.shape[0]
    idx = np.empty(size, dtype=np.int64)
    pa = np.zeros((size + 1, nw), dtype=np.uint64)
    pb = np.zeros((size + 1, nw), dtype=np.uint64)
    _first_combination(ra, rb, size, idx, pa, pb)
    while True:
        w = _row_weight(pa[size], pb[size])
        if w < top:
            counts[w] += 1
        if not _next_combination(ra, rb, size, idx, pa, pb):
            return


@numba.njit(cache=True)
def _level_walk_1w(ra, rb, size, abort_below, witness, counts):
    # single-word variant of the two level kernels above: counts is filled
    # when it has entries, otherwise the minimum is tracked
    k = ra.shape[0]
    best = 1 << 30
    if size == 0 or size > k:
        return best
    top = counts.shape[0]
    idx = np.empty(size, dtype=np.int64)
    pa = np.zeros(size + 1, dtype=np.uint64)
    pb = np.zeros(size + 1, dtype=np.uint64)
    for p in range(size):
        idx[p] = p
        pa[p + 1] = pa[p] ^ ra[p]
        pb[p + 1] = pb[p] ^ rb[p]
    last = size - 1
    while True:
        w = _ctpop(pa[size] | pb[size])
        if top:
            if w < top:
                counts[w] += 1
        elif w > 0 and w < best:
            best = w
            for p in range(size):
                witness[p] = idx[p]
            if w < abort_below:
                return best
        if idx[last] < k - 1:
            # fast path: only the last position moves
            idx[last] += 1
            r = idx[last]
            pa[size] = pa[last] ^ ra[r]
            pb[size] = pb[last] ^ rb[r]
            continue
        p = last
        while p >= 0 and idx[p] == k - size + p:
            p -= 1
        if p < 0:
            return best
        idx[p] += 1
        for q in range(p + 1, size):
            idx[q] = idx[q - 1] + 1
        for q in range(p, size):
            r = idx[q]
            pa[q + 1] = pa[q] ^ ra[r]
            pb[q + 1] = pb[q] ^ rb[r]
