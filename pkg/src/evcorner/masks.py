"""Concentric circle masks used by the candidate selector.

Two Bresenham-style rings around the event pixel: an inner ring of 16
offsets at radius 3 and an outer ring of 20 offsets at radius 4.  The
offsets are listed in traversal order around each ring, so that arc
contiguity can be expressed as index adjacency (with wrap-around).

Offsets are (dx, dy) relative to the ring center.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_INNER_OFFSETS = (
    (0, 3), (1, 3), (2, 2), (3, 1),
    (3, 0), (3, -1), (2, -2), (1, -3),
    (0, -3), (-1, -3), (-2, -2), (-3, -1),
    (-3, 0), (-3, 1), (-2, 2), (-1, 3),
)

_OUTER_OFFSETS = (
    (0, 4), (1, 4), (2, 3), (3, 2), (4, 1),
    (4, 0), (4, -1), (3, -2), (2, -3), (1, -4),
    (0, -4), (-1, -4), (-2, -3), (-3, -2), (-4, -1),
    (-4, 0), (-4, 1), (-3, 2), (-2, 3), (-1, 4),
)


def _as_offset_arrays(offsets) -> tuple[np.ndarray, np.ndarray]:
    arr = np.array(offsets, dtype=np.int64)
    return np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1])


@dataclass(frozen=True)
class CircleMask:
    """Ring offsets plus the accepted arc-length ranges for each ring.

    An arc of newest values on a ring is accepted when its length lies
    in [lo, hi] -- or, equivalently for the mirrored all-older case, in
    [n - hi, n - lo] where n is the ring size.  Both forms are checked
    by the selector.
    """

    inner_dx: np.ndarray
    inner_dy: np.ndarray
    outer_dx: np.ndarray
    outer_dy: np.ndarray
    inner_range: tuple[int, int] = (3, 6)
    outer_range: tuple[int, int] = (4, 8)

    @property
    def inner_size(self) -> int:
        return len(self.inner_dx)

    @property
    def outer_size(self) -> int:
        return len(self.outer_dx)

    def inner_values(self, window: np.ndarray) -> np.ndarray:
        """Ring samples from a 9x9 window (center at [4, 4]), in ring order."""
        return np.ascontiguousarray(window[4 + self.inner_dy, 4 + self.inner_dx])

    def outer_values(self, window: np.ndarray) -> np.ndarray:
        return np.ascontiguousarray(window[4 + self.outer_dy, 4 + self.outer_dx])


def _default_mask() -> CircleMask:
    idx, idy = _as_offset_arrays(_INNER_OFFSETS)
    odx, ody = _as_offset_arrays(_OUTER_OFFSETS)
    return CircleMask(inner_dx=idx, inner_dy=idy, outer_dx=odx, outer_dy=ody)


#: Radius-3 / radius-4 ring pair used by all detectors.
DEFAULT_MASK = _default_mask()

#: Half-width of the square neighborhood that contains both rings.
PATCH_RADIUS = 4
PATCH_SIZE = 2 * PATCH_RADIUS + 1
