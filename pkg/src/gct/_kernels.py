"""numba kernels for highest-weight-vector evaluation.

All arithmetic is int64; callers guarantee (by an a-priori magnitude
bound) that nothing overflows and fall back to object arrays otherwise.
"""

from __future__ import annotations

import numpy as np
import warnings

from numba import njit, prange

warnings.filterwarnings("ignore", message="The TBB threading layer")


@njit(cache=True)
def bareiss_det(a):
    n = a.shape[0]
    m = a.copy()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k, k] == 0:
            swap = -1
            for i in range(k + 1, n):
                if m[i, k] != 0:
                    swap = i
                    break
            if swap < 0:
                return 0
            for j in range(n):
                tmp = m[k, j]
                m[k, j] = m[swap, j]
                m[swap, j] = tmp
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i, j] = (m[i, j] * m[k, k] - m[i, k] * m[k, j]) // prev
        prev = m[k, k]
    return sign * m[n - 1, n - 1]


@njit(cache=True)
def det_table(vecs, length):
    """``out[t_1..t_L]`` = det of the L x L matrix whose column s is ``vecs[t_s, :L]``."""
    r = vecs.shape[0]
    size = r**length
    out = np.zeros(size, dtype=np.int64)
    mat = np.zeros((length, length), dtype=np.int64)
    for idx in range(size):
        rem = idx
        for s in range(length - 1, -1, -1):
            t = rem % r
            rem //= r
            for row in range(length):
                mat[row, s] = vecs[t, row]
        out[idx] = bareiss_det(mat)
    return out


@njit(cache=True)
def dependence_table(vecs, length, p):
    """1 where the p vectors ``vecs[t_s, :length]`` are linearly dependent (Gram determinant 0)."""
    r = vecs.shape[0]
    size = r**p
    out = np.zeros(size, dtype=np.uint8)
    gram = np.zeros((p, p), dtype=np.int64)
    ts = np.zeros(p, dtype=np.int64)
    for idx in range(size):
        rem = idx
        for s in range(p - 1, -1, -1):
            ts[s] = rem % r
            rem //= r
        for a in range(p):
            for b in range(p):
                acc = 0
                for row in range(length):
                    acc += vecs[ts[a], row] * vecs[ts[b], row]
                gram[a, b] = acc
        if bareiss_det(gram) == 0:
            out[idx] = 1
    return out


@njit(cache=True)
def _subtree(phi, k0, prod0, order, pos_cols, pos_pref, col_len, col_table, col_rows,
             col_bylevel, tab_off, tabs, dep_off, deps, r, d):
    if k0 == d:
        return prod0, 1
    total = 0
    leaves = 0
    choice = np.full(d + 1, -1, dtype=np.int64)
    vals = np.zeros(d + 1, dtype=np.int64)
    vals[k0] = prod0
    k = k0
    while k >= k0:
        choice[k] += 1
        if choice[k] >= r:
            choice[k] = -1
            k -= 1
            continue
        q = order[k]
        phi[q] = choice[k]
        v = vals[k]
        ok = True
        for i in range(3):
            c = pos_cols[q, i]
            p = pos_pref[q, i]
            length = col_len[c]
            if p == length:
                idx = 0
                for s in range(length):
                    idx = idx * r + phi[col_rows[c, s]]
                dv = tabs[tab_off[col_table[c]] + idx]
                if dv == 0:
                    ok = False
                    break
                v *= dv
            else:
                idx = 0
                for s in range(p):
                    idx = idx * r + phi[col_bylevel[c, s]]
                if deps[dep_off[col_table[c], p] + idx]:
                    ok = False
                    break
        if not ok:
            continue
        if k == d - 1:
            total += v
            leaves += 1
        else:
            vals[k + 1] = v
            k += 1
    return total, leaves


@njit(cache=True)
def _prefix_ok(phi, k, order, pos_cols, pos_pref, col_len, col_table, col_rows,
               col_bylevel, tab_off, tabs, dep_off, deps, r):
    """Value contributed at level k (0 = pruned), given phi on levels <= k."""
    q = order[k]
    v = 1
    for i in range(3):
        c = pos_cols[q, i]
        p = pos_pref[q, i]
        length = col_len[c]
        if p == length:
            idx = 0
            for s in range(length):
                idx = idx * r + phi[col_rows[c, s]]
            v *= tabs[tab_off[col_table[c]] + idx]
        else:
            idx = 0
            for s in range(p):
                idx = idx * r + phi[col_bylevel[c, s]]
            if deps[dep_off[col_table[c], p] + idx]:
                return 0
        if v == 0:
            return 0
    return v


@njit(parallel=True, cache=True)
def evaluate_tables(order, pos_cols, pos_pref, col_len, col_table, col_rows, col_bylevel,
                    tab_off, tabs, dep_off, deps, r, d, split):
    """Sum over phi, parallel over the first ``split`` levels.

    Returns per-chunk partial sums and the number of nonzero
    determinant products formed in each chunk.
    """
    chunks = r**split
    partial = np.zeros(chunks, dtype=np.int64)
    counts = np.zeros(chunks, dtype=np.int64)
    for chunk in prange(chunks):
        phi = np.zeros(d, dtype=np.int64)
        v = 1
        for k in range(split):
            phi[order[k]] = (chunk // r ** (split - 1 - k)) % r
        ok = True
        for k in range(split):
            f = _prefix_ok(phi, k, order, pos_cols, pos_pref, col_len, col_table, col_rows,
                           col_bylevel, tab_off, tabs, dep_off, deps, r)
            if f == 0:
                ok = False
                break
            v *= f
        if ok:
            total, leaves = _subtree(phi, split, v, order, pos_cols, pos_pref, col_len, col_table,
                                     col_rows, col_bylevel, tab_off, tabs, dep_off, deps, r, d)
            partial[chunk] = total
            counts[chunk] = leaves
    return partial, counts


@njit(cache=True)
def evaluate_direct(order, pos_cols, pos_pref, col_len, col_factor, col_rows, vecs, r, d):
    """Uncached reference: determinants recomputed at every completed column."""
    total = 0
    maxlen = col_rows.shape[1]
    mat = np.zeros((maxlen, maxlen), dtype=np.int64)
    phi = np.zeros(d, dtype=np.int64)
    choice = np.full(d + 1, -1, dtype=np.int64)
    vals = np.zeros(d + 1, dtype=np.int64)
    vals[0] = 1
    k = 0
    while k >= 0:
        choice[k] += 1
        if choice[k] >= r:
            choice[k] = -1
            k -= 1
            continue
        q = order[k]
        phi[q] = choice[k]
        v = vals[k]
        for i in range(3):
            c = pos_cols[q, i]
            length = col_len[c]
            if pos_pref[q, i] == length:
                sub = mat[:length, :length]
                for s in range(length):
                    t = phi[col_rows[c, s]]
                    for row in range(length):
                        sub[row, s] = vecs[col_factor[c], t, row]
                v *= bareiss_det(sub.copy())
                if v == 0:
                    break
        if v == 0:
            continue
        if k == d - 1:
            total += v
        else:
            vals[k + 1] = v
            k += 1
    return total
