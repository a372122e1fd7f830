"""Hundredth rounding used throughout the similarity measures.

All percent values in this package are rounded to the nearest hundredth
with ties going away from zero, evaluated on the binary double:
``round2(x) = sign(x) * floor(|x| * 100 + 0.5) / 100``.  Fluctuation
values are additionally matched through :func:`quantize_hundredths`,
which maps a rounded value to an exact integer count of hundredths so
that equality tests cannot be disturbed by float noise.

round2 is idempotent on its own outputs, and quantize_hundredths agrees
with it: ``quantize_hundredths(v) == round(round2(v) * 100)`` for the
nonnegative magnitudes the fluctuation measures operate on.
"""

import math

import numpy as np


def round2(x):
    """Round a scalar to the nearest hundredth, ties away from zero."""
    if x >= 0:
        return math.floor(x * 100.0 + 0.5) / 100.0
    return -math.floor(-x * 100.0 + 0.5) / 100.0


def round2_array(values):
    """Vectorized :func:`round2` over a float array."""
    v = np.asarray(values, dtype=np.float64)
    return np.copysign(np.floor(np.abs(v) * 100.0 + 0.5), v) / 100.0


def quantize_hundredths(values):
    """Map nonnegative values to int64 hundredth counts (10.01 -> 1001)."""
    v = np.asarray(values, dtype=np.float64)
    if v.size and v.min() < 0:
        raise ValueError("quantize_hundredths expects nonnegative values")
    return np.floor(v * 100.0 + 0.5).astype(np.int64)
