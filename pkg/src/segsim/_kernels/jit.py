"""Numba implementations of the hot kernels.

Same contracts as ``plain.py``.  No fastmath: the DTW table must stay
bit-identical to the fallback backend, so each cell is exactly
``cost + min(three predecessors)`` with a single rounding.
"""

import numpy as np
from numba import njit

jitkw = dict(cache=True, nogil=True)


@njit(**jitkw)
def lce_table(a, b):
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n, m), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            if a[i] == b[j]:
                nxt = out[i + 1, j + 1] if i + 1 < n and j + 1 < m else 0
                out[i, j] = nxt + 1
    return out


@njit(**jitkw)
def count_ge(lce, max_len):
    n, m = lce.shape
    out = np.zeros((n, max_len + 1), dtype=np.int64)
    for s in range(n):
        for j in range(m):
            v = lce[s, j]
            if v > max_len:
                v = max_len
            out[s, v] += 1
        acc = np.int64(0)
        for L in range(max_len, -1, -1):
            acc += out[s, L]
            out[s, L] = acc
    return out


@njit(**jitkw)
def dtw_table(x, y, lo, hi, squared):
    n, m = x.shape[0], y.shape[0]
    D = np.full((n, m), np.inf)
    for i in range(n):
        for j in range(lo[i], hi[i] + 1):
            d = x[i] - y[j]
            c = d * d if squared else abs(d)
            if i == 0 and j == 0:
                D[0, 0] = c
                continue
            best = np.inf
            if i > 0 and j > 0 and D[i - 1, j - 1] < best:
                best = D[i - 1, j - 1]
            if i > 0 and D[i - 1, j] < best:
                best = D[i - 1, j]
            if j > 0 and D[i, j - 1] < best:
                best = D[i, j - 1]
            D[i, j] = c + best
    return D


@njit(**jitkw)
def coverage_dp(qual):
    n = qual.shape[0]
    best = np.zeros(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        top = best[i - 1]
        for s in range(i - 1):
            if qual[s, i - s]:
                cand = best[s] + (i - s)
                if cand > top:
                    top = cand
        best[i] = top
    return best
