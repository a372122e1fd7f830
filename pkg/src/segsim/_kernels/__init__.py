"""Hot-loop kernels with a numba fast path and a numpy fallback.

The numba backend is used when importable; set ``SEGSIM_NO_NUMBA`` to a
non-empty value other than ``0`` to force the numpy fallback.  The two
backends are value-identical (the DTW tables bit-for-bit), so which one
is active never changes results, only speed.
"""

import os

USING_NUMBA = False

if os.environ.get("SEGSIM_NO_NUMBA", "") not in ("", "0"):
    from .plain import count_ge, coverage_dp, dtw_table, lce_table
else:
    try:
        from .jit import count_ge, coverage_dp, dtw_table, lce_table

        USING_NUMBA = True
    except ImportError:
        from .plain import count_ge, coverage_dp, dtw_table, lce_table

__all__ = ["USING_NUMBA", "count_ge", "coverage_dp", "dtw_table", "lce_table"]
