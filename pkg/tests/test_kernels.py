"""Backend parity: the numba kernels and the numpy fallback must agree.

Integer kernels are compared exactly; the DTW table is compared
bit-for-bit (both backends compute cost + min(predecessors), so no
arithmetic reordering is allowed to creep in).  Both backends are also
checked against naive reference loops.
"""

import os

import numpy as np
import pytest

from segsim._kernels import USING_NUMBA, plain

try:
    from segsim._kernels import jit
except ImportError:  # pragma: no cover
    jit = None

backends = [plain] + ([jit] if jit is not None else [])


def naive_lce(a, b):
    n, m = len(a), len(b)
    out = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            k = 0
            while i + k < n and j + k < m and a[i + k] == b[j + k]:
                k += 1
            out[i, j] = k
    return out


def naive_dtw_table(x, y, lo, hi, squared):
    n, m = len(x), len(y)
    D = np.full((n, m), np.inf)
    for i in range(n):
        for j in range(int(lo[i]), int(hi[i]) + 1):
            c = (x[i] - y[j]) ** 2 if squared else abs(x[i] - y[j])
            if i == 0 and j == 0:
                D[i, j] = c
                continue
            prev = [np.inf]
            if i > 0 and j > 0:
                prev.append(D[i - 1, j - 1])
            if i > 0:
                prev.append(D[i - 1, j])
            if j > 0:
                prev.append(D[i, j - 1])
            D[i, j] = c + min(prev)
    return D


def full_window(n, m):
    return np.zeros(n, dtype=np.int64), np.full(n, m - 1, dtype=np.int64)


def random_window(rng, n, m):
    """A random row-interval window containing (0,0) and (n-1,m-1),
    with enough row-to-row overlap that every cell stays reachable."""
    lo = np.zeros(n, dtype=np.int64)
    hi = np.zeros(n, dtype=np.int64)
    col = 0
    for i in range(n):
        lo[i] = col
        hi[i] = min(m - 1, col + int(rng.integers(0, 4)))
        col = int(rng.integers(lo[i], hi[i] + 1))
    lo[0] = 0
    hi[n - 1] = m - 1
    lo[n - 1] = min(lo[n - 1], m - 1)
    return lo, np.maximum(hi, lo)


@pytest.mark.parametrize("backend", backends)
def test_lce_against_naive(backend):
    rng = np.random.default_rng(7)
    for _ in range(30):
        a = rng.integers(0, 4, size=rng.integers(1, 12)).astype(np.int64)
        b = rng.integers(0, 4, size=rng.integers(1, 12)).astype(np.int64)
        assert np.array_equal(backend.lce_table(a, b), naive_lce(a, b))


@pytest.mark.parametrize("backend", backends)
def test_count_ge_counts_occurrences(backend):
    rng = np.random.default_rng(8)
    for _ in range(30):
        a = rng.integers(0, 3, size=rng.integers(1, 10)).astype(np.int64)
        b = rng.integers(0, 3, size=rng.integers(1, 10)).astype(np.int64)
        lce = naive_lce(a, b)
        table = backend.count_ge(lce, len(a))
        for s in range(len(a)):
            for L in range(len(a) + 1):
                assert table[s, L] == int((lce[s] >= L).sum())


@pytest.mark.parametrize("backend", backends)
@pytest.mark.parametrize("squared", [False, True])
def test_dtw_table_against_naive(backend, squared):
    rng = np.random.default_rng(9)
    for _ in range(25):
        n, m = int(rng.integers(1, 12)), int(rng.integers(1, 12))
        x, y = rng.normal(size=n), rng.normal(size=m)
        lo, hi = full_window(n, m)
        got = backend.dtw_table(x, y, lo, hi, squared)
        want = naive_dtw_table(x, y, lo, hi, squared)
        assert np.array_equal(got, want)


@pytest.mark.parametrize("backend", backends)
def test_dtw_table_windowed_against_naive(backend):
    rng = np.random.default_rng(10)
    for _ in range(25):
        n, m = int(rng.integers(2, 12)), int(rng.integers(2, 12))
        x, y = rng.normal(size=n), rng.normal(size=m)
        lo, hi = random_window(rng, n, m)
        got = backend.dtw_table(x, y, lo, hi, False)
        want = naive_dtw_table(x, y, lo, hi, False)
        assert np.array_equal(got, want)


@pytest.mark.parametrize("backend", backends)
def test_coverage_dp_small_cases(backend):
    # qual admits [0,2) and [2,5): best coverage of a length-5 sequence is 5
    qual = np.zeros((5, 6), dtype=np.bool_)
    qual[0, 2] = True
    qual[2, 3] = True
    best = backend.coverage_dp(qual)
    assert best[5] == 5
    # overlapping alternatives: [0,3) and [1,5) conflict; best picks 4
    qual = np.zeros((5, 6), dtype=np.bool_)
    qual[0, 3] = True
    qual[1, 4] = True
    assert backend.coverage_dp(qual)[5] == 4
    # nothing qualifies
    assert backend.coverage_dp(np.zeros((4, 5), dtype=np.bool_))[4] == 0


@pytest.mark.skipif(jit is None, reason="numba unavailable")
def test_backends_bit_identical():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = rng.integers(0, 3, size=rng.integers(1, 15)).astype(np.int64)
        b = rng.integers(0, 3, size=rng.integers(1, 15)).astype(np.int64)
        assert np.array_equal(plain.lce_table(a, b), jit.lce_table(a, b))
        lce = plain.lce_table(a, b)
        assert np.array_equal(
            plain.count_ge(lce, len(a)), jit.count_ge(lce, len(a))
        )
        n, m = int(rng.integers(2, 20)), int(rng.integers(2, 20))
        x, y = rng.normal(size=n), rng.normal(size=m)
        for lo, hi in (full_window(n, m), random_window(rng, n, m)):
            for squared in (False, True):
                dp, dj = (
                    plain.dtw_table(x, y, lo, hi, squared),
                    jit.dtw_table(x, y, lo, hi, squared),
                )
                # bit-for-bit, including the +inf pattern
                assert np.array_equal(dp, dj)
        qual = rng.random((8, 9)) < 0.2
        assert np.array_equal(plain.coverage_dp(qual), jit.coverage_dp(qual))


def test_dispatch_uses_numba_by_default():
    import segsim._kernels as k

    if os.environ.get("SEGSIM_NO_NUMBA", "") not in ("", "0"):
        pytest.skip("fallback forced by environment; default dispatch n/a")
    if jit is not None and not USING_NUMBA:
        pytest.fail("numba importable but dispatcher chose the fallback")
    assert k.dtw_table is (jit.dtw_table if USING_NUMBA else plain.dtw_table)


def test_env_flag_selects_fallback():
    import subprocess
    import sys

    code = (
        "import segsim._kernels as k; "
        "assert not k.USING_NUMBA; "
        "assert k.dtw_table.__module__.endswith('plain')"
    )
    proc = subprocess.run(
        [sys.executable, "-c", code],
        env={"SEGSIM_NO_NUMBA": "1", "PATH": "/usr/bin:/bin"},
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
