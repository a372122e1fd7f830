"""Two-sample hypothesis tests, self-contained.

welch_t_test is the unequal-variance t-test with Welch-Satterthwaite
degrees of freedom; the t distribution is evaluated through the
regularized incomplete beta function (continued fraction, modified
Lentz), so no statistics dependency is needed at runtime.

wilcoxon_rank_sum is the two-sample rank-sum test (Mann-Whitney) on
midranks.  Exact mode walks a subset-sum dynamic program over doubled
midranks -- doubling makes every midrank an integer even under ties, so
tail probabilities are exact rational counts.  The normal approximation
applies the tie-corrected variance and a 0.5 continuity correction.

p_one_sided is always the "sample_a stochastically greater" tail;
p_two_sided doubles the smaller tail, capped at 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSampleError,
    InsufficientSamplesError,
    TooLargeError,
)

EXACT_GUARD = 24


@dataclass(frozen=True)
class TestResult:
    statistic: float
    degrees_of_freedom: float
    p_one_sided: float
    p_two_sided: float
    method: str


def _betacf(a, b, x):
    """Continued fraction for the incomplete beta (modified Lentz)."""
    eps, fpmin = 3e-16, 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < fpmin:
        d = fpmin
    d = 1.0 / d
    h = d
    for m in range(1, 300):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h


def _betainc(a, b, x):
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _t_sf(t, df):
    """P(T_df > t)."""
    tail = 0.5 * _betainc(0.5 * df, 0.5, df / (df + t * t))
    return tail if t >= 0 else 1.0 - tail


def _norm_sf(z):
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def welch_t_test(sample_a, sample_b):
    """Unequal-variance two-sample t-test."""
    a = np.asarray(sample_a, dtype=np.float64)
    b = np.asarray(sample_b, dtype=np.float64)
    if a.size < 2 or b.size < 2:
        raise InsufficientSamplesError("each sample needs at least 2 values")
    va, vb = a.var(ddof=1), b.var(ddof=1)
    if va == 0.0 and vb == 0.0:
        raise DegenerateSampleError("both samples have zero variance")
    ua, ub = va / a.size, vb / b.size
    t = (a.mean() - b.mean()) / math.sqrt(ua + ub)
    df = (ua + ub) ** 2 / (ua**2 / (a.size - 1) + ub**2 / (b.size - 1))
    p_ge = _t_sf(t, df)
    return TestResult(
        statistic=float(t),
        degrees_of_freedom=float(df),
        p_one_sided=p_ge,
        p_two_sided=min(1.0, 2.0 * min(p_ge, 1.0 - p_ge)),
        method="welch",
    )


def _doubled_midranks(pooled):
    """Midranks of the pooled sample, times 2 (always integers)."""
    n = pooled.shape[0]
    order = np.argsort(pooled, kind="stable")
    doubled = np.empty(n, dtype=np.int64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and pooled[order[j + 1]] == pooled[order[i]]:
            j += 1
        for k in range(i, j + 1):
            doubled[order[k]] = i + j + 2  # 2 * (mean of 1-based ranks)
        i = j + 1
    return doubled


def _exact_tails(doubled, n_a, w2):
    """P(W >= w2/2) and P(W <= w2/2) by exact subset counting."""
    total = int(doubled.sum())
    ways = [[0] * (total + 1) for _ in range(n_a + 1)]
    ways[0][0] = 1
    for d in (int(v) for v in doubled):
        for k in range(n_a, 0, -1):
            dst, src = ways[k], ways[k - 1]
            for s in range(total, d - 1, -1):
                if src[s - d]:
                    dst[s] += src[s - d]
    counts = ways[n_a]
    everything = sum(counts)
    ge = sum(counts[w2:])
    le = sum(counts[: w2 + 1])
    return ge / everything, le / everything


def _tie_term(pooled):
    _, tie_sizes = np.unique(pooled, return_counts=True)
    return float((tie_sizes.astype(np.float64) ** 3 - tie_sizes).sum())


def wilcoxon_rank_sum(sample_a, sample_b, mode="auto"):
    """Rank-sum test; statistic is sample_a's midrank sum.

    auto mode runs exactly up to EXACT_GUARD pooled values and falls
    back to the normal approximation beyond.
    """
    a = np.asarray(sample_a, dtype=np.float64)
    b = np.asarray(sample_b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise InsufficientSamplesError("samples must be non-empty")
    n = a.size + b.size
    if mode == "auto":
        mode = "exact" if n <= EXACT_GUARD else "normal_approx"
    elif mode == "exact" and n > EXACT_GUARD:
        raise TooLargeError(
            f"exact mode enumerates subsets only up to {EXACT_GUARD} pooled values"
        )
    elif mode not in ("exact", "normal_approx"):
        raise ValueError(f"unknown mode {mode!r}")
    pooled = np.concatenate([a, b])
    doubled = _doubled_midranks(pooled)
    w2 = int(doubled[: a.size].sum())
    if mode == "exact":
        p_ge, p_le = _exact_tails(doubled, a.size, w2)
    else:
        mean2 = a.size * (n + 1)  # doubled mean
        var = (a.size * b.size / 12.0) * (
            (n + 1) - _tie_term(pooled) / (n * (n - 1))
        )
        if var <= 0.0:
            raise DegenerateSampleError("all pooled values are tied")
        sd2 = 2.0 * math.sqrt(var)  # doubled scale
        p_ge = _norm_sf((w2 - mean2 - 1) / sd2)
        p_le = 1.0 - _norm_sf((w2 - mean2 + 1) / sd2)
    return TestResult(
        statistic=w2 / 2.0,
        degrees_of_freedom=None,
        p_one_sided=p_ge,
        p_two_sided=min(1.0, 2.0 * min(p_ge, p_le)),
        method="wilcoxon",
    )
