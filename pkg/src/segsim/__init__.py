"""Similarity measures for same-length time series segments.

Three measures: F (shared fluctuation subsequence coverage), G
(distribution property matching), and DTW distance (exact and
windowed-approximate).  A harness runs the pairwise experimental
protocol with aggregation and hypothesis tests; `fc` is the CLI.

Set SEGSIM_NO_NUMBA=1 to force the pure-numpy kernel fallback.
"""

from ._kernels import USING_NUMBA
from .errors import (
    ComputationError,
    DegenerateSampleError,
    DivisionByZeroError,
    EmptySegmentError,
    InputError,
    InsufficientSamplesError,
    LengthMismatchError,
    MissingYearError,
    OrderError,
    ParseError,
    SegsimError,
    TooLargeError,
    ZeroBaselineError,
    ZeroTotalError,
)
from .experiment import (
    ExperimentConfig,
    ExperimentReport,
    MeasureRow,
    PairReport,
    compare_segments,
    compare_years,
    pair_report_dict,
    render_json,
    render_table,
    report_dict,
    run_experiment,
    run_fixture_experiment,
)
from .fluctuation import (
    FluctuationMatchReport,
    SubsequenceMatch,
    count_occurrences,
    f_measure,
)
from .io import (
    FixtureRow,
    FixtureTable,
    SyntheticSpec,
    fixture_csv,
    generate,
    load_fixture,
    read_csv,
    write_csv,
)
from .properties import (
    AttributionResult,
    MatchConfig,
    PropertyMatch,
    PropertyMatchReport,
    PropertySet,
    attribution_fraction,
    g_measure,
    property_set,
)
from .rounding import quantize_hundredths, round2, round2_array
from .series import (
    DECLINE,
    RISE,
    FractionDate,
    FluctuationSequence,
    Segment,
    TimeSeries,
    align_lengths,
    classify_year,
    fluctuation_sequence,
    segment_by_year,
)
from .stats import TestResult, welch_t_test, wilcoxon_rank_sum
from .warping import (
    CostModel,
    DtwResult,
    WarpingPath,
    dtw_brute_force,
    dtw_exact,
    dtw_fast,
    validate_path,
)

__version__ = "0.1.0"

__all__ = [
    "USING_NUMBA",
    "__version__",
    # errors
    "SegsimError", "InputError", "ComputationError", "ParseError",
    "OrderError", "ZeroTotalError", "EmptySegmentError", "MissingYearError",
    "LengthMismatchError", "ZeroBaselineError", "DivisionByZeroError",
    "TooLargeError", "DegenerateSampleError", "InsufficientSamplesError",
    # series
    "FractionDate", "TimeSeries", "Segment", "FluctuationSequence",
    "DECLINE", "RISE", "segment_by_year", "classify_year",
    "fluctuation_sequence", "align_lengths",
    # rounding
    "round2", "round2_array", "quantize_hundredths",
    # fluctuation
    "SubsequenceMatch", "FluctuationMatchReport", "count_occurrences",
    "f_measure",
    # properties
    "MatchConfig", "PropertySet", "PropertyMatch", "PropertyMatchReport",
    "AttributionResult", "property_set", "g_measure", "attribution_fraction",
    # warping
    "CostModel", "WarpingPath", "DtwResult", "validate_path",
    "dtw_exact", "dtw_brute_force", "dtw_fast",
    # stats
    "TestResult", "welch_t_test", "wilcoxon_rank_sum",
    # io
    "FixtureRow", "FixtureTable", "SyntheticSpec", "read_csv", "write_csv",
    "load_fixture", "fixture_csv", "generate",
    # experiment
    "ExperimentConfig", "PairReport", "MeasureRow", "ExperimentReport",
    "compare_segments", "compare_years", "run_experiment",
    "run_fixture_experiment", "pair_report_dict", "report_dict",
    "render_json", "render_table",
]
