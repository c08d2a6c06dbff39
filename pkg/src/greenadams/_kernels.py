"""Compiled inner loops: column reduction over F_p and power-module expansion.

Everything here works on plain numpy arrays (CSC triples for matrices) so the
public layers can stay in ordinary Python.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# ---------------------------------------------------------------------------
# bit helpers


@njit(cache=True, inline="always")
def _ctz(x):
    # x != 0; isolating the lowest bit gives an exact power of two
    low = x & (~x + np.uint64(1))
    return np.int64(np.log2(np.float64(low)))


# ---------------------------------------------------------------------------
# rank by column reduction
#
# Columns are inserted in ``col_order``; rows are relabelled through
# ``row_pos`` and the pivot of a reduced column is its lowest relabelled row.
# Every stored pivot column is zero below its pivot word, so each reduction
# only touches the window [pivot word, last nonzero word].


@njit(cache=True)
def rank_gf2(indptr, indices, data, nrows, row_pos, col_order, max_rank):
    nwords = (nrows + 63) >> 6
    if max_rank <= 0 or nwords == 0:
        return 0
    store = np.zeros((max_rank, nwords), np.uint64)
    top = np.zeros(max_rank, np.int64)
    slot_of = np.full(nrows, -1, np.int64)
    work = np.zeros(nwords, np.uint64)
    rank = 0
    one = np.uint64(1)
    for c in col_order:
        lo_w = nwords
        hi_w = -1
        for t in range(indptr[c], indptr[c + 1]):
            if data[t] & 1 == 0:
                continue
            pos = row_pos[indices[t]]
            w = pos >> 6
            work[w] ^= one << np.uint64(pos & 63)
            if w < lo_w:
                lo_w = w
            if w > hi_w:
                hi_w = w
        w = lo_w
        while w <= hi_w:
            x = work[w]
            if x == 0:
                w += 1
                continue
            pos = (w << 6) + _ctz(x)
            s = slot_of[pos]
            if s < 0:
                if rank >= max_rank:
                    raise ValueError("rank bound exceeded")
                for u in range(w, hi_w + 1):
                    store[rank, u] = work[u]
                top[rank] = hi_w
                slot_of[pos] = rank
                rank += 1
                break
            h = top[s]
            for u in range(w, h + 1):
                work[u] ^= store[s, u]
            if h > hi_w:
                hi_w = h
        for u in range(lo_w, hi_w + 1):
            work[u] = 0
    return rank


@njit(cache=True, inline="always")
def _f3_add(x1, x2, y1, y2):
    # planes hold the indicator of residue 1 and residue 2 respectively
    x0 = ~(x1 | x2)
    y0 = ~(y1 | y2)
    s1 = (x1 & y0) | (x0 & y1) | (x2 & y2)
    s2 = (x2 & y0) | (x0 & y2) | (x1 & y1)
    return s1, s2


@njit(cache=True)
def rank_gf3(indptr, indices, data, nrows, row_pos, col_order, max_rank):
    nwords = (nrows + 63) >> 6
    if max_rank <= 0 or nwords == 0:
        return 0
    st1 = np.zeros((max_rank, nwords), np.uint64)
    st2 = np.zeros((max_rank, nwords), np.uint64)
    top = np.zeros(max_rank, np.int64)
    slot_of = np.full(nrows, -1, np.int64)
    w1 = np.zeros(nwords, np.uint64)
    w2 = np.zeros(nwords, np.uint64)
    rank = 0
    one = np.uint64(1)
    for c in col_order:
        lo_w = nwords
        hi_w = -1
        for t in range(indptr[c], indptr[c + 1]):
            v = data[t] % 3
            if v == 0:
                continue
            pos = row_pos[indices[t]]
            w = pos >> 6
            bit = one << np.uint64(pos & 63)
            if v == 1:
                w1[w] |= bit
            else:
                w2[w] |= bit
            if w < lo_w:
                lo_w = w
            if w > hi_w:
                hi_w = w
        w = lo_w
        while w <= hi_w:
            x = w1[w] | w2[w]
            if x == 0:
                w += 1
                continue
            b = _ctz(x)
            pos = (w << 6) + b
            coef_one = (w1[w] >> np.uint64(b)) & one
            s = slot_of[pos]
            if s < 0:
                if rank >= max_rank:
                    raise ValueError("rank bound exceeded")
                # normalise the pivot entry to 1 (negation swaps the planes)
                if coef_one:
                    for u in range(w, hi_w + 1):
                        st1[rank, u] = w1[u]
                        st2[rank, u] = w2[u]
                else:
                    for u in range(w, hi_w + 1):
                        st1[rank, u] = w2[u]
                        st2[rank, u] = w1[u]
                top[rank] = hi_w
                slot_of[pos] = rank
                rank += 1
                break
            h = top[s]
            if coef_one:
                # work - pivot
                for u in range(w, h + 1):
                    a, bb = _f3_add(w1[u], w2[u], st2[s, u], st1[s, u])
                    w1[u] = a
                    w2[u] = bb
            else:
                # work - 2*pivot = work + pivot
                for u in range(w, h + 1):
                    a, bb = _f3_add(w1[u], w2[u], st1[s, u], st2[s, u])
                    w1[u] = a
                    w2[u] = bb
            if h > hi_w:
                hi_w = h
        for u in range(lo_w, hi_w + 1):
            w1[u] = 0
            w2[u] = 0
    return rank


@njit(cache=True)
def rank_gfp(indptr, indices, data, nrows, p, row_pos, col_order, max_rank):
    if max_rank <= 0 or nrows == 0:
        return 0
    inv = np.zeros(p, np.int64)
    for a in range(1, p):
        for b in range(1, p):
            if (a * b) % p == 1:
                inv[a] = b
    # pivot columns live in one growing pool, each stored from its pivot row
    # to its last nonzero row; entry u of column s is pool[base[s] + u]
    cap = max(8 * nrows, 1024)
    pool = np.zeros(cap, np.int16)
    used = 0
    base = np.zeros(max_rank, np.int64)
    top = np.zeros(max_rank, np.int64)
    slot_of = np.full(nrows, -1, np.int64)
    work = np.zeros(nrows, np.int64)
    rank = 0
    for c in col_order:
        lo = nrows
        hi = -1
        for t in range(indptr[c], indptr[c + 1]):
            v = data[t] % p
            if v == 0:
                continue
            pos = row_pos[indices[t]]
            work[pos] = (work[pos] + v) % p
            if pos < lo:
                lo = pos
            if pos > hi:
                hi = pos
        i = lo
        while i <= hi:
            v = work[i]
            if v == 0:
                i += 1
                continue
            s = slot_of[i]
            if s < 0:
                if rank >= max_rank:
                    raise ValueError("rank bound exceeded")
                length = hi - i + 1
                if used + length > cap:
                    cap = max(2 * cap, used + length)
                    grown = np.zeros(cap, np.int16)
                    grown[:used] = pool[:used]
                    pool = grown
                f = inv[v]
                for u in range(i, hi + 1):
                    pool[used + u - i] = (work[u] * f) % p
                base[rank] = used - i
                used += length
                top[rank] = hi
                slot_of[i] = rank
                rank += 1
                break
            h = top[s]
            b = base[s]
            f = p - v
            for u in range(i, h + 1):
                work[u] = (work[u] + f * pool[b + u]) % p
            if h > hi:
                hi = h
        for u in range(lo, hi + 1):
            work[u] = 0
    return rank


# ---------------------------------------------------------------------------
# multiset / subset ranking in lexicographic order of sorted index tuples


@njit(cache=True)
def _binom_table(m):
    t = np.zeros((m + 1, m + 1), np.int64)
    for a in range(m + 1):
        t[a, 0] = 1
        for b in range(1, a + 1):
            t[a, b] = t[a - 1, b - 1] + t[a - 1, b]
    return t


@njit(cache=True)
def _multiset_rank(tup, n, r, binom):
    # number of size-k multisets drawn from values >= v in [0, r) is
    # C(r - v + k - 1, k)
    rk = 0
    prev = 0
    for t in range(n):
        k = n - t - 1
        for v in range(prev, tup[t]):
            rk += binom[r - v + k - 1, k] if r - v + k - 1 >= 0 else 0
        prev = tup[t]
    return rk


@njit(cache=True)
def _subset_rank(tup, n, r, binom):
    # size-k subsets of values > v in [0, r): C(r - v - 1, k)
    rk = 0
    prev = 0
    for t in range(n):
        k = n - t - 1
        for v in range(prev, tup[t]):
            if r - v - 1 >= k:
                rk += binom[r - v - 1, k]
        prev = tup[t] + 1
    return rk


@njit(cache=True)
def enumerate_multisets(r, n, count):
    out = np.zeros((count, n), np.int64)
    if n == 0:
        return out
    cur = np.zeros(n, np.int64)
    for row in range(count):
        out[row, :] = cur
        # next multiset in lex order
        t = n - 1
        while t >= 0 and cur[t] == r - 1:
            t -= 1
        if t < 0:
            break
        v = cur[t] + 1
        for u in range(t, n):
            cur[u] = v
    return out


@njit(cache=True)
def enumerate_subsets(r, n, count):
    out = np.zeros((count, n), np.int64)
    if n == 0:
        return out
    cur = np.arange(n).astype(np.int64)
    for row in range(count):
        out[row, :] = cur
        t = n - 1
        while t >= 0 and cur[t] == r - n + t:
            t -= 1
        if t < 0:
            break
        cur[t] += 1
        for u in range(t + 1, n):
            cur[u] = cur[u - 1] + 1
    return out


# ---------------------------------------------------------------------------
# exterior and symmetric powers of a sparse generator
#
# The generator G is given in CSC form.  For a basis tuple (i_1, ..., i_n) the
# image G e_{i_1} * ... * G e_{i_n} is expanded by choosing one row from the
# support of each factor (exterior) or by distributing each repeated factor's
# exponent over its support with binomial weights (symmetric).


@njit(cache=True)
def exterior_columns(indptr, indices, data, r, n, p, basis, dim):
    binom = _binom_table(r + n + 1)
    col_ptr = np.zeros(dim + 1, np.int64)
    cap = max(dim * 4, 16)
    out_idx = np.zeros(cap, np.int64)
    out_val = np.zeros(cap, np.int64)
    nnz = 0
    acc = np.zeros(dim, np.int64)
    touched = np.zeros(dim, np.int64)
    is_touched = np.zeros(dim, np.bool_)
    choice = np.zeros(n, np.int64)
    rows = np.zeros(n, np.int64)
    srt = np.zeros(n, np.int64)
    used = np.zeros(r, np.bool_)
    assigned = np.zeros(n + 1, np.bool_)
    for col in range(dim):
        ntouched = 0
        if n == 0:
            acc[0] = 1
            touched[0] = 0
            is_touched[0] = True
            ntouched = 1
        else:
            # depth-first over the supports of the n factors
            depth = 0
            choice[0] = indptr[basis[col, 0]] - 1
            assigned[0] = False
            while depth >= 0:
                src = basis[col, depth]
                if assigned[depth]:
                    used[rows[depth]] = False
                    assigned[depth] = False
                choice[depth] += 1
                if choice[depth] >= indptr[src + 1]:
                    depth -= 1
                    continue
                e = choice[depth]
                row = indices[e]
                if used[row] or data[e] % p == 0:
                    continue
                rows[depth] = row
                if depth == n - 1:
                    coef = 1
                    for t in range(n):
                        coef = (coef * data[choice[t]]) % p
                        srt[t] = rows[t]
                    # insertion sort; the inversion count gives the sign
                    inv = 0
                    for a in range(1, n):
                        key = srt[a]
                        b = a - 1
                        while b >= 0 and srt[b] > key:
                            srt[b + 1] = srt[b]
                            b -= 1
                            inv += 1
                        srt[b + 1] = key
                    if inv & 1:
                        coef = (p - coef) % p
                    tgt = _subset_rank(srt, n, r, binom)
                    if not is_touched[tgt]:
                        is_touched[tgt] = True
                        touched[ntouched] = tgt
                        ntouched += 1
                    acc[tgt] = (acc[tgt] + coef) % p
                    continue
                used[row] = True
                assigned[depth] = True
                depth += 1
                choice[depth] = indptr[basis[col, depth]] - 1
                assigned[depth] = False
        for a in range(ntouched):
            tgt = touched[a]
            v = acc[tgt]
            if v != 0:
                if nnz >= cap:
                    cap *= 2
                    ni = np.zeros(cap, np.int64)
                    nv = np.zeros(cap, np.int64)
                    ni[:nnz] = out_idx[:nnz]
                    nv[:nnz] = out_val[:nnz]
                    out_idx = ni
                    out_val = nv
                out_idx[nnz] = tgt
                out_val[nnz] = v
                nnz += 1
            acc[tgt] = 0
            is_touched[tgt] = False
        col_ptr[col + 1] = nnz
    return col_ptr, out_idx[:nnz], out_val[:nnz]


@njit(cache=True)
def symmetric_columns(indptr, indices, data, r, n, p, basis, dim):
    binom = _binom_table(r + n + 1)
    bmod = np.zeros((n + 1, n + 1), np.int64)
    for a in range(n + 1):
        bmod[a, 0] = 1
        for b in range(1, a + 1):
            bmod[a, b] = (bmod[a - 1, b - 1] + bmod[a - 1, b]) % p
    col_ptr = np.zeros(dim + 1, np.int64)
    cap = max(dim * 4, 16)
    out_idx = np.zeros(cap, np.int64)
    out_val = np.zeros(cap, np.int64)
    nnz = 0
    acc = np.zeros(dim, np.int64)
    touched = np.zeros(dim, np.int64)
    is_touched = np.zeros(dim, np.bool_)
    # slots: one per (distinct source variable, support entry)
    max_slots = n * (r + 1) + 1
    slot_src = np.zeros(max_slots, np.int64)
    slot_ent = np.zeros(max_slots, np.int64)
    slot_last = np.zeros(max_slots, np.bool_)
    cnt = np.zeros(max_slots, np.int64)
    rem_before = np.zeros(max_slots, np.int64)
    coef_before = np.zeros(max_slots, np.int64)
    expo_src = np.zeros(r, np.int64)
    tgt_exp = np.zeros(r, np.int64)
    tup = np.zeros(n, np.int64)
    pw = np.zeros(n + 1, np.int64)
    for col in range(dim):
        ntouched = 0
        for v in range(r):
            expo_src[v] = 0
        for t in range(n):
            expo_src[basis[col, t]] += 1
        nslots = 0
        feasible = True
        for v in range(r):
            if expo_src[v] == 0:
                continue
            a = indptr[v]
            b = indptr[v + 1]
            if a == b:
                feasible = False
                break
            for e in range(a, b):
                slot_src[nslots] = v
                slot_ent[nslots] = e
                slot_last[nslots] = e == b - 1
                nslots += 1
        if n == 0:
            acc[0] = 1
            is_touched[0] = True
            touched[0] = 0
            ntouched = 1
        elif feasible:
            # depth-first over slots; cnt[s] = exponent assigned to slot s
            depth = 0
            rem_before[0] = expo_src[slot_src[0]]
            coef_before[0] = 1
            cnt[0] = -1
            while depth >= 0:
                s = depth
                src = slot_src[s]
                rem = rem_before[s]
                # undo the previous assignment of this slot
                if cnt[s] >= 0:
                    tgt_exp[indices[slot_ent[s]]] -= cnt[s]
                if slot_last[s]:
                    if cnt[s] >= 0:
                        cnt[s] = -1
                        depth -= 1
                        continue
                    c = rem
                else:
                    c = cnt[s] + 1
                    if c > rem:
                        cnt[s] = -1
                        depth -= 1
                        continue
                cnt[s] = c
                tgt_exp[indices[slot_ent[s]]] += c
                # weight C(rem, c) * val^c
                val = data[slot_ent[s]] % p
                wgt = bmod[rem, c]
                if wgt == 0 or (val == 0 and c > 0):
                    continue
                pv = 1
                for _ in range(c):
                    pv = (pv * val) % p
                coef = (coef_before[s] * wgt * pv) % p
                if s == nslots - 1:
                    # leaf: build the sorted target tuple
                    k = 0
                    for v in range(r):
                        for _ in range(tgt_exp[v]):
                            tup[k] = v
                            k += 1
                    tgt = _multiset_rank(tup, n, r, binom)
                    if not is_touched[tgt]:
                        is_touched[tgt] = True
                        touched[ntouched] = tgt
                        ntouched += 1
                    acc[tgt] = (acc[tgt] + coef) % p
                    continue
                nxt = s + 1
                if slot_src[nxt] == src:
                    rem_before[nxt] = rem - c
                else:
                    rem_before[nxt] = expo_src[slot_src[nxt]]
                coef_before[nxt] = coef
                cnt[nxt] = -1
                depth = nxt
        for a in range(ntouched):
            tgt = touched[a]
            v = acc[tgt]
            if v != 0:
                if nnz >= cap:
                    cap *= 2
                    ni = np.zeros(cap, np.int64)
                    nv = np.zeros(cap, np.int64)
                    ni[:nnz] = out_idx[:nnz]
                    nv[:nnz] = out_val[:nnz]
                    out_idx = ni
                    out_val = nv
                out_idx[nnz] = tgt
                out_val[nnz] = v
                nnz += 1
            acc[tgt] = 0
            is_touched[tgt] = False
        col_ptr[col + 1] = nnz
    return col_ptr, out_idx[:nnz], out_val[:nnz]


# ---------------------------------------------------------------------------
# monomials of a permutation module: rotation y_i -> y_(i+1 mod t) and
# multiplication by a single variable, both as index maps on the sorted
# multiset basis


@njit(cache=True)
def multiset_rotation(basis, t, n):
    """Index of the multiset obtained from each row by i -> i + 1 mod t."""
    binom = _binom_table(t + n + 1)
    count = basis.shape[0]
    out = np.empty(count, np.int64)
    tmp = np.empty(n, np.int64)
    for row in range(count):
        wrap = 0
        for u in range(n):
            if basis[row, u] == t - 1:
                wrap += 1
        for u in range(wrap):
            tmp[u] = 0
        k = wrap
        for u in range(n):
            v = basis[row, u]
            if v != t - 1:
                tmp[k] = v + 1
                k += 1
        out[row] = _multiset_rank(tmp, n, t, binom)
    return out


@njit(cache=True)
def multiset_insertions(basis, t, n):
    """out[row, i] = index of (row with i added) among size-(n+1) multisets."""
    binom = _binom_table(t + n + 2)
    count = basis.shape[0]
    out = np.empty((count, t), np.int64)
    tmp = np.empty(n + 1, np.int64)
    for row in range(count):
        for i in range(t):
            k = 0
            placed = False
            for u in range(n):
                v = basis[row, u]
                if not placed and i <= v:
                    tmp[k] = i
                    k += 1
                    placed = True
                tmp[k] = v
                k += 1
            if not placed:
                tmp[k] = i
            out[row, i] = _multiset_rank(tmp, n + 1, t, binom)
    return out


@njit(cache=True)
def permutation_cycles(perm):
    """Cycle id, position within the cycle and cycle lengths of a permutation.

    Element ``x`` equals ``perm`` applied ``pos[x]`` times to the first element
    of its cycle.
    """
    m = perm.shape[0]
    cyc = np.full(m, -1, np.int64)
    pos = np.zeros(m, np.int64)
    lengths = np.zeros(m, np.int64)
    first = np.zeros(m, np.int64)
    nc = 0
    for x in range(m):
        if cyc[x] >= 0:
            continue
        y = x
        s = 0
        while cyc[y] < 0:
            cyc[y] = nc
            pos[y] = s
            s += 1
            y = perm[y]
        lengths[nc] = s
        first[nc] = x
        nc += 1
    return cyc, pos, lengths[:nc], first[:nc]
