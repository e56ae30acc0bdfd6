"""Global surface of active events (time surface).

One full-frame timestamp map per polarity.  Each incoming event
overwrites exactly one cell of its polarity's map with its timestamp,
so the surface always holds, per pixel and polarity, the time of the
most recent event there.  Never-touched cells hold the NEVER sentinel.

Local 9x9 windows of the surface are what the candidate selector and
the refiner consume.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .masks import PATCH_RADIUS, PATCH_SIZE
from .stream import NEVER, Event, SensorGeometry


@dataclass(frozen=True)
class LocalPatch:
    """A 9x9 timestamp window cut from one polarity's surface.

    `values[r, c]` is the surface cell at
    (x - 4 + c, y - 4 + r) for the center pixel (x, y); the center
    itself sits at values[4, 4].
    """

    values: np.ndarray
    center_x: int
    center_y: int
    center_t: int

    def __post_init__(self) -> None:
        if self.values.shape != (PATCH_SIZE, PATCH_SIZE):
            raise ValueError(f"patch must be 9x9, got {self.values.shape}")


class GlobalSae:
    """Per-polarity full-frame timestamp maps with O(1) update."""

    def __init__(self, geometry: SensorGeometry) -> None:
        self.geometry = geometry
        self.surfaces = np.full(
            (2, geometry.height, geometry.width), NEVER, dtype=np.int64
        )

    def surface(self, polarity: int) -> np.ndarray:
        """The (height, width) timestamp map for one polarity."""
        return self.surfaces[polarity]

    def update(self, e: Event) -> None:
        """Record an event: one cell of its polarity's map becomes e.t."""
        self.surfaces[e.p, e.y, e.x] = e.t

    def is_border(self, x: int, y: int) -> bool:
        """True when a 9x9 window around (x, y) would leave the frame."""
        return (
            x < PATCH_RADIUS
            or x >= self.geometry.width - PATCH_RADIUS
            or y < PATCH_RADIUS
            or y >= self.geometry.height - PATCH_RADIUS
        )

    def extract_local(self, e: Event) -> LocalPatch | None:
        """Copy the 9x9 window around an event from its polarity's map.

        Returns None for border events (center closer than 4 px to any
        frame edge).  The copy leaves the surface untouched.
        """
        if self.is_border(e.x, e.y):
            return None
        window = self.surfaces[
            e.p,
            e.y - PATCH_RADIUS : e.y + PATCH_RADIUS + 1,
            e.x - PATCH_RADIUS : e.x + PATCH_RADIUS + 1,
        ].copy()
        return LocalPatch(values=window, center_x=e.x, center_y=e.y, center_t=e.t)
