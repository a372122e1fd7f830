"""Vectorized numpy implementations of the hot kernels.

Fallback backend used when numba is unavailable or disabled via the
``SEGSIM_NO_NUMBA`` environment variable.  Every function here must be
value-identical to its twin in ``jit.py``: integer kernels exactly, the
DTW table bit-for-bit (each cell is computed as ``cost + min(three
predecessors)`` in both backends; float min is exact, so only the one
final addition rounds, identically).
"""

import numpy as np


def lce_table(a, b):
    """Longest-common-extension table of two int sequences.

    out[i, j] = length of the longest common prefix of a[i:] and b[j:].
    """
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n, m), dtype=np.int64)
    eq = a[:, None] == b[None, :]
    out[n - 1] = eq[n - 1]
    for i in range(n - 2, -1, -1):
        row = eq[i].astype(np.int64)
        row[:-1] += row[:-1] * out[i + 1, 1:]
        out[i] = row
    return out


def count_ge(lce, max_len):
    """Per-row counts of entries >= L.

    out[s, L] = #{j : lce[s, j] >= L} for L in 0..max_len.  Row s of the
    a-vs-b LCE table therefore yields, at column L, the number of
    occurrences of a[s:s+L] inside b (overlaps counted).
    """
    n = lce.shape[0]
    out = np.empty((n, max_len + 1), dtype=np.int64)
    clipped = np.minimum(lce, max_len)
    for s in range(n):
        hist = np.bincount(clipped[s], minlength=max_len + 1)
        out[s] = np.cumsum(hist[::-1])[::-1]
    return out


def dtw_table(x, y, lo, hi, squared):
    """Windowed cumulative-cost DTW table, dense with +inf outside.

    Row i may only use columns lo[i]..hi[i] inclusive; (0, 0) and
    (n-1, m-1) must lie inside the window.  Moves are the unit steps
    (1,1), (1,0), (0,1).  Iteration runs over anti-diagonals: all three
    predecessors of a cell live on earlier diagonals, so each diagonal
    is one vectorized update.
    """
    n, m = x.shape[0], y.shape[0]
    D = np.full((n, m), np.inf)
    C = x[:, None] - y[None, :]
    C = C * C if squared else np.abs(C)
    D[0, 0] = C[0, 0]
    for d in range(1, n + m - 1):
        i = np.arange(max(0, d - m + 1), min(n - 1, d) + 1)
        j = d - i
        keep = (j >= lo[i]) & (j <= hi[i])
        i, j = i[keep], j[keep]
        if i.size == 0:
            continue
        best = _gather(D, i - 1, j - 1)
        np.minimum(best, _gather(D, i - 1, j), out=best)
        np.minimum(best, _gather(D, i, j - 1), out=best)
        D[i, j] = C[i, j] + best
    return D


def _gather(D, i, j):
    """D[i, j] with out-of-range pairs reading as +inf."""
    ok = (i >= 0) & (j >= 0)
    out = np.full(i.shape, np.inf)
    out[ok] = D[i[ok], j[ok]]
    return out


def coverage_dp(qual):
    """Maximum total length coverable by qualifying subsequences.

    qual[s, L] marks a[s:s+L] as selectable.  best[i] = the maximum sum
    of lengths of non-overlapping selected subsequences inside a[0:i];
    best[n] is the optimum for the whole sequence.
    """
    n = qual.shape[0]
    best = np.zeros(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        s = np.arange(i - 1)
        ok = qual[s, i - s]
        top = best[i - 1]
        if ok.any():
            s_ok = s[ok]
            top = max(top, int((best[s_ok] + (i - s_ok)).max()))
        best[i] = top
    return best
