"""Dynamic time warping over segments.

dtw_exact runs the O(nm) dynamic program.  dtw_brute_force enumerates
every valid warping path and exists purely as a test oracle, guarded to
tiny inputs.  dtw_fast is a multiresolution approximation: it coarsens
both series by pairwise averaging, solves the coarse problem, projects
the coarse path up and refines inside a radius-expanded window.  To
make the approximation non-increasing in the radius, the refinement
window at radius r is the union of the projected windows for radii
0..r, so a larger radius always searches a superset of paths.

Paths are 0-based index pairs; the boundary condition is (0, 0) to
(n-1, m-1).  A result's distance is the cumulative cost table's final
cell; on cost ties the traced path prefers diagonal, then vertical
(advance in a), then horizontal predecessors.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EmptySegmentError, TooLargeError

COST_KINDS = ("absolute_difference", "squared_difference")

STEPS = ((1, 1), (1, 0), (0, 1))

BRUTE_FORCE_CELL_LIMIT = 36


@dataclass(frozen=True)
class CostModel:
    kind: str = "absolute_difference"

    def __post_init__(self):
        if self.kind not in COST_KINDS:
            raise ValueError(f"unknown cost kind {self.kind!r}")

    @property
    def squared(self):
        return self.kind == "squared_difference"

    def pointwise(self, u, v):
        d = u - v
        return d * d if self.squared else abs(d)


@dataclass(frozen=True)
class WarpingPath:
    """Monotone unit-step alignment between two index ranges."""

    pairs: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(map(tuple, self.pairs)))
        if not self.pairs:
            raise ValueError("empty warping path")
        for (i0, j0), (i1, j1) in zip(self.pairs, self.pairs[1:]):
            if (i1 - i0, j1 - j0) not in STEPS:
                raise ValueError(f"invalid step ({i0},{j0}) -> ({i1},{j1})")

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class DtwResult:
    distance: float
    path: WarpingPath
    exact: bool
    radius: int = None


def validate_path(path, n, m):
    """Check boundary, monotonicity, and step conditions; raise on violation."""
    if path.pairs[0] != (0, 0):
        raise ValueError("path must start at (0, 0)")
    if path.pairs[-1] != (n - 1, m - 1):
        raise ValueError(f"path must end at ({n - 1}, {m - 1})")
    # steps already enforced by the WarpingPath constructor
    return True


def _values(segment):
    v = np.asarray(segment.values, dtype=np.float64)
    if v.size == 0:
        raise EmptySegmentError("cannot warp an empty segment")
    return v


def _full_window(n, m):
    return np.zeros(n, dtype=np.int64), np.full(n, m - 1, dtype=np.int64)


def _traceback(D):
    n, m = D.shape
    i, j = n - 1, m - 1
    pairs = [(i, j)]
    while i > 0 or j > 0:
        diag = D[i - 1, j - 1] if i > 0 and j > 0 else np.inf
        vert = D[i - 1, j] if i > 0 else np.inf
        horz = D[i, j - 1] if j > 0 else np.inf
        best = min(diag, vert, horz)
        if diag == best:
            i, j = i - 1, j - 1
        elif vert == best:
            i = i - 1
        else:
            j = j - 1
        pairs.append((i, j))
    pairs.reverse()
    return WarpingPath(tuple(pairs))


def dtw_exact(a, b, cost=CostModel()):
    """Minimum-cost alignment by the full dynamic program."""
    x, y = _values(a), _values(b)
    lo, hi = _full_window(len(x), len(y))
    D = _kernels.dtw_table(x, y, lo, hi, cost.squared)
    path = _traceback(D)
    validate_path(path, len(x), len(y))
    return DtwResult(distance=float(D[-1, -1]), path=path, exact=True)


def dtw_brute_force(a, b, cost=CostModel()):
    """Exhaustive enumeration of every valid warping path (test oracle)."""
    x, y = _values(a), _values(b)
    n, m = len(x), len(y)
    if n * m > BRUTE_FORCE_CELL_LIMIT:
        raise TooLargeError(
            f"{n}x{m} exceeds the {BRUTE_FORCE_CELL_LIMIT}-cell enumeration guard"
        )
    best = [np.inf, None]
    trail = []

    def walk(i, j, acc):
        acc = acc + cost.pointwise(x[i], y[j])
        trail.append((i, j))
        if i == n - 1 and j == m - 1:
            if acc < best[0]:
                best[0], best[1] = acc, tuple(trail)
        else:
            for di, dj in STEPS:
                if i + di < n and j + dj < m:
                    walk(i + di, j + dj, acc)
        trail.pop()

    walk(0, 0, 0.0)
    path = WarpingPath(best[1])
    validate_path(path, n, m)
    return DtwResult(distance=float(best[0]), path=path, exact=True)


def _coarsen(x):
    """Halve resolution by pairwise averaging; an odd tail is kept as-is."""
    if len(x) % 2 == 0:
        return (x[0::2] + x[1::2]) / 2.0
    return np.append((x[0:-1:2] + x[1::2]) / 2.0, x[-1])


def _project(path, n, m, radius):
    """Blow a coarse path up to fine-grid row windows, expanded by radius."""
    lo = np.full(n, m - 1, dtype=np.int64)
    hi = np.zeros(n, dtype=np.int64)
    for ci, cj in path.pairs:
        for fi in (2 * ci, 2 * ci + 1):
            if fi < n:
                lo[fi] = min(lo[fi], 2 * cj)
                hi[fi] = max(hi[fi], 2 * cj + 1)
    if radius > 0:
        rows = np.arange(n)
        # lo/hi are monotone along the path, so the +-radius row
        # neighborhood minimum/maximum are the clipped end rows
        lo = lo[np.maximum(rows - radius, 0)] - radius
        hi = hi[np.minimum(rows + radius, n - 1)] + radius
    return np.clip(lo, 0, m - 1), np.clip(hi, 0, m - 1)


def _window_for_radius(x, y, radius, squared):
    """Refinement window of the standard multiresolution pass."""
    n, m = len(x), len(y)
    if min(n, m) <= radius + 2:
        return _full_window(n, m)
    cx, cy = _coarsen(x), _coarsen(y)
    clo, chi = _window_for_radius(cx, cy, radius, squared)
    D = _kernels.dtw_table(cx, cy, clo, chi, squared)
    return _project(_traceback(D), n, m, radius)


def dtw_fast(a, b, cost=CostModel(), radius=1):
    """Approximate DTW, non-increasing in radius, exact for big radii."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    x, y = _values(a), _values(b)
    n, m = len(x), len(y)
    lo, hi = _window_for_radius(x, y, 0, cost.squared)
    for s in range(1, radius + 1):
        slo, shi = _window_for_radius(x, y, s, cost.squared)
        np.minimum(lo, slo, out=lo)
        np.maximum(hi, shi, out=hi)
        if min(n, m) <= s + 2:  # that pass used the full window
            break
    D = _kernels.dtw_table(x, y, lo, hi, cost.squared)
    path = _traceback(D)
    validate_path(path, n, m)
    full = bool((lo == 0).all() and (hi == m - 1).all())
    return DtwResult(
        distance=float(D[-1, -1]), path=path, exact=full, radius=radius
    )
