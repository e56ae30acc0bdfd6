"""Arc-based corner candidate test on local time-surface patches.

A corner moving across the sensor leaves a wedge of recent timestamps
on the surface.  On a ring of samples around the event pixel, that
wedge shows up as one contiguous arc that is strictly newer than the
rest of the ring, with a length bounded away from both "a few noisy
cells" and "half the ring" (which a plain edge would produce).

The test runs on two concentric rings; both must admit a valid arc.
Two implementations are provided:

* :func:`select_candidate` -- the greedy production test (grow an arc
  from the newest sample, checking the acceptance rule at each length).
* :func:`select_candidate_bruteforce` -- exhaustive enumeration of
  every (start, length) arc, kept as an independent cross-check.  When
  all ring samples are pairwise distinct the two tests agree exactly.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .masks import DEFAULT_MASK, CircleMask
from .sae import LocalPatch


def arc_admits(values: np.ndarray, lo: int, hi: int) -> bool:
    """Greedy newest-arc test on one ring of timestamps.

    Accepts when some contiguous (wrap-around) arc is strictly newer
    than the entire rest of the ring and its length is in [lo, hi] or
    [n - hi, n - lo].
    """
    vals = np.ascontiguousarray(values, dtype=np.int64)
    return bool(_kernels.arc_admits(vals, lo, hi))


def arc_admits_bruteforce(values: np.ndarray, lo: int, hi: int) -> bool:
    """Exhaustive newest-arc test: try every (start, length) arc.

    Direct transcription of the acceptance rule, used as the oracle for
    the greedy search.  For each admissible length L and each of the n
    start positions, the arc wins iff its minimum strictly exceeds the
    maximum of the other n - L samples.
    """
    vals = np.asarray(values, dtype=np.int64)
    n = len(vals)
    doubled = np.concatenate([vals, vals])
    for length in range(1, n):
        in_range = lo <= length <= hi or n - hi <= length <= n - lo
        if not in_range:
            continue
        arc_windows = np.lib.stride_tricks.sliding_window_view(doubled, length)
        comp_windows = np.lib.stride_tricks.sliding_window_view(doubled, n - length)
        arc_min = arc_windows.min(axis=1)  # arc starting at each index
        comp_max = comp_windows.max(axis=1)
        # Complement of the arc starting at s begins at s + length.
        starts = np.arange(n)
        if np.any(arc_min[starts] > comp_max[starts + length]):
            return True
    return False


def select_candidate(patch: LocalPatch, mask: CircleMask = DEFAULT_MASK) -> bool:
    """True when both rings around the patch center admit a valid arc."""
    inner = mask.inner_values(patch.values)
    if not arc_admits(inner, *mask.inner_range):
        return False
    outer = mask.outer_values(patch.values)
    return arc_admits(outer, *mask.outer_range)


def select_candidate_bruteforce(
    patch: LocalPatch, mask: CircleMask = DEFAULT_MASK
) -> bool:
    """Exhaustive-enumeration version of :func:`select_candidate`."""
    inner = mask.inner_values(patch.values)
    if not arc_admits_bruteforce(inner, *mask.inner_range):
        return False
    outer = mask.outer_values(patch.values)
    return arc_admits_bruteforce(outer, *mask.outer_range)
