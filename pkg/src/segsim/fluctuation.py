"""F measure: order-free coverage of one fluctuation sequence by another.

The F value between a subject sequence A and a comparison sequence O is
the percent of A covered by non-overlapping contiguous subsequences,
each at least two values long, that occur in O at least as often as
they occur in A (overlapping occurrences counted).  Values compare
equal exactly at hundredth precision, with no extra tolerance.

Greedy mode selects qualifying subsequences longest-first, then
leftmost-first.  Exact mode maximizes the total covered length by
dynamic programming over qualifying intervals; it is the oracle mode
and never covers less than greedy.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptySegmentError
from .rounding import quantize_hundredths, round2

MODES = ("greedy", "exact")


@dataclass(frozen=True)
class SubsequenceMatch:
    """One selected subsequence of A, with its occurrence counts."""

    start: int
    length: int
    occurrences_in_a: int
    occurrences_in_o: int

    def __post_init__(self):
        if self.length < 2:
            raise ValueError("matches must span at least 2 values")
        if not 1 <= self.occurrences_in_a <= self.occurrences_in_o:
            raise ValueError("occurrence counts violate the frequency condition")


@dataclass(frozen=True)
class FluctuationMatchReport:
    matches: tuple
    covered_length: int
    f_value: float
    mode_used: str

    def __post_init__(self):
        end = -1
        for m in sorted(self.matches, key=lambda m: m.start):
            if m.start <= end:
                raise ValueError("matches overlap")
            end = m.start + m.length - 1
        if self.covered_length != sum(m.length for m in self.matches):
            raise ValueError("covered_length does not sum the matches")


def count_occurrences(pattern, haystack):
    """Number of start positions where pattern occurs in haystack.

    Equality is exact at hundredth precision; overlapping occurrences
    all count.
    """
    p = quantize_hundredths(pattern.values)
    h = quantize_hundredths(haystack.values)
    if p.shape[0] == 0:
        raise EmptySegmentError("pattern is empty")
    if p.shape[0] > h.shape[0]:
        return 0
    windows = np.lib.stride_tricks.sliding_window_view(h, p.shape[0])
    return int((windows == p).all(axis=1).sum())


def _qualify(a_codes, o_codes):
    """Qualification table plus occurrence counts.

    qual[s, L] is True when a[s:s+L] is a real subsequence (L >= 2,
    s+L <= len(a)) occurring in o at least as often as in a.  in_a and
    in_o hold the occurrence counts for every (s, L).
    """
    n = a_codes.shape[0]
    in_a = _kernels.count_ge(_kernels.lce_table(a_codes, a_codes), n)
    in_o = _kernels.count_ge(_kernels.lce_table(a_codes, o_codes), n)
    lengths = np.arange(n + 1)
    qual = (in_o >= in_a) & (lengths >= 2)
    qual &= (np.arange(n)[:, None] + lengths) <= n
    return qual, in_a, in_o


def _select_greedy(qual):
    n = qual.shape[0]
    covered = np.zeros(n, dtype=bool)
    picks = []
    for length in range(n, 1, -1):
        for s in range(n - length + 1):
            if qual[s, length] and not covered[s : s + length].any():
                covered[s : s + length] = True
                picks.append((s, length))
    picks.sort()
    return picks


def _select_exact(qual):
    best = _kernels.coverage_dp(qual)
    picks = []
    i = qual.shape[0]
    while i >= 2:
        if best[i] == best[i - 1]:
            i -= 1
            continue
        s = 0  # a match ends at i; take the leftmost start that fits
        while not (qual[s, i - s] and best[s] + (i - s) == best[i]):
            s += 1
        picks.append((s, i - s))
        i = s
    picks.sort()
    return picks


def f_measure(a, o, mode="greedy"):
    """Coverage report of fluctuation sequence ``a`` against ``o``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    a_codes = quantize_hundredths(a.values)
    o_codes = quantize_hundredths(o.values)
    if a_codes.shape[0] == 0 or o_codes.shape[0] == 0:
        raise EmptySegmentError("fluctuation sequences must be non-empty")
    qual, in_a, in_o = _qualify(a_codes, o_codes)
    picks = _select_greedy(qual) if mode == "greedy" else _select_exact(qual)
    matches = tuple(
        SubsequenceMatch(s, L, int(in_a[s, L]), int(in_o[s, L]))
        for s, L in picks
    )
    covered = sum(L for _, L in picks)
    return FluctuationMatchReport(
        matches=matches,
        covered_length=covered,
        f_value=round2(100.0 * covered / a_codes.shape[0]),
        mode_used=mode,
    )
