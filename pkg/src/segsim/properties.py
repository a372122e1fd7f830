"""G measure: label-free resemblance of statistical property sets.

A segment's property set is the ordered 7-tuple (mean, std_dev,
minimum, maximum, p25, p50, p75).  The G value between property sets K
and L is the percent of K's entries that lie within an absolute
tolerance of at least one entry of L, regardless of which property
either entry names.  The set is treated as a tuple, never collapsed:
the denominator is always 7, which is what quantizes G values to
multiples of 100/7.

Matching is directional and, by default, many-to-one: each K entry is
tested independently, so one L entry may serve several K entries.  An
optimal one-to-one assignment is available behind a config flag for
sensitivity analysis.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EmptySegmentError
from .rounding import round2

PROPERTY_LABELS = ("mean", "std_dev", "minimum", "maximum", "p25", "p50", "p75")

PERCENTILE_MODES = ("paper_range", "data_percentile")


@dataclass(frozen=True)
class MatchConfig:
    """Knobs for property extraction and matching.

    tolerance is an absolute band in the data's units.  paper_range
    percentiles interpolate linearly inside [min, max]; data_percentile
    uses conventional order statistics.  std_ddof 0 is the population
    convention.
    """

    tolerance: float = 0.3
    percentile_mode: str = "paper_range"
    one_to_one: bool = False
    std_ddof: int = 0

    def __post_init__(self):
        # zero is allowed: the band degenerates to exact equality
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        if self.percentile_mode not in PERCENTILE_MODES:
            raise ValueError(f"unknown percentile mode {self.percentile_mode!r}")


@dataclass(frozen=True)
class PropertySet:
    mean: float
    std_dev: float
    minimum: float
    maximum: float
    p25: float
    p50: float
    p75: float

    labels = PROPERTY_LABELS

    def values(self):
        return np.array(
            [self.mean, self.std_dev, self.minimum, self.maximum,
             self.p25, self.p50, self.p75]
        )


@dataclass(frozen=True)
class PropertyMatch:
    """K entry i matched L entry j at absolute difference."""

    k_index: int
    l_index: int
    difference: float


@dataclass(frozen=True)
class PropertyMatchReport:
    matched_count: int
    g_value: float
    matches: tuple
    same_property_count: int

    def __post_init__(self):
        if not 0 <= self.same_property_count <= self.matched_count <= 7:
            raise ValueError("inconsistent match counts")


def property_set(segment, config=MatchConfig()):
    """Extract the 7 statistical properties of a segment."""
    v = segment.values
    if v.size == 0:
        raise EmptySegmentError(f"segment {segment.label!r} has no values")
    mn, mx = float(v.min()), float(v.max())
    if config.percentile_mode == "paper_range":
        p25, p50, p75 = (mn + (mx - mn) * q for q in (0.25, 0.50, 0.75))
    else:
        p25, p50, p75 = (float(np.percentile(v, q)) for q in (25, 50, 75))
    return PropertySet(
        mean=float(v.mean()),
        std_dev=float(v.std(ddof=config.std_ddof)),
        minimum=mn,
        maximum=mx,
        p25=p25,
        p50=p50,
        p75=p75,
    )


def _match_independent(diff, within):
    """Each K entry takes its closest L entry (ties -> lowest index)."""
    pairs = []
    for i in range(diff.shape[0]):
        if within[i].any():
            pairs.append((i, int(np.argmin(diff[i]))))
    return pairs


def _match_one_to_one(diff, within):
    """Maximum bipartite matching via augmenting paths (Kuhn)."""
    n_k, n_l = within.shape
    owner = [-1] * n_l

    def try_assign(i, seen):
        for j in range(n_l):
            if within[i, j] and not seen[j]:
                seen[j] = True
                if owner[j] < 0 or try_assign(owner[j], seen):
                    owner[j] = i
                    return True
        return False

    for i in range(n_k):
        try_assign(i, [False] * n_l)
    return sorted((i, j) for j, i in enumerate(owner) if i >= 0)


def g_measure(k, l, config=MatchConfig()):
    """Directional property-set resemblance of K against L."""
    kv, lv = k.values(), l.values()
    diff = np.abs(kv[:, None] - lv[None, :])
    within = diff <= config.tolerance
    if config.one_to_one:
        pairs = _match_one_to_one(diff, within)
    else:
        pairs = _match_independent(diff, within)
    matches = tuple(
        PropertyMatch(i, j, float(diff[i, j])) for i, j in pairs
    )
    matched = len(pairs)
    return PropertyMatchReport(
        matched_count=matched,
        g_value=round2(100.0 * matched / 7.0),
        matches=matches,
        same_property_count=sum(1 for i, j in pairs if i == j),
    )


@dataclass(frozen=True)
class AttributionResult:
    """Share of matches that paired a property with itself.

    defined is False when no report contributed any match; the value is
    then 0 by convention.
    """

    value: float
    defined: bool


def attribution_fraction(reports):
    """Percent of matched properties that matched the same property."""
    if not reports:
        raise ValueError("need at least one report")
    matched = sum(r.matched_count for r in reports)
    same = sum(r.same_property_count for r in reports)
    if matched == 0:
        return AttributionResult(value=0.0, defined=False)
    return AttributionResult(value=round2(100.0 * same / matched), defined=True)
