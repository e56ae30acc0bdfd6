"""Refractory event filter.

Event streams carry heavy redundancy: a moving edge triggers the same
pixel many times in quick succession.  The filter keeps an event only
when its pixel has been quiet for longer than a refractory window or
when the brightness-change direction flipped; everything else is
dropped before any detection work happens.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .stream import NEVER, NS_PER_MS, Event, SensorGeometry

#: Default refractory window: 50 ms.
DEFAULT_WINDOW_NS = 50 * NS_PER_MS


class RefractoryFilter:
    """Per-pixel last-event state plus the pass/reject rule.

    An event passes when any of these holds for its pixel:
      * no event was ever recorded there,
      * the time since the last event exceeds the window (a gap equal
        to the window is still rejected),
      * its polarity differs from the last event's.

    The pixel state is updated to the incoming event in *all* cases, so
    a rejected event still resets its pixel's clock.  A zero window is
    not a no-op: simultaneous same-polarity events still get dropped.
    """

    def __init__(
        self, geometry: SensorGeometry, window_ns: int = DEFAULT_WINDOW_NS
    ) -> None:
        if window_ns < 0:
            raise ValueError(f"window must be non-negative, got {window_ns}")
        self.geometry = geometry
        self.window_ns = int(window_ns)
        self.last_t = np.full(geometry.shape, NEVER, dtype=np.int64)
        self.last_p = np.zeros(geometry.shape, dtype=np.int8)

    def process(self, e: Event) -> bool:
        """Decide one event; returns True when it passes."""
        return bool(
            _kernels.filter_step(
                self.last_t, self.last_p, e.t, e.x, e.y, e.p, self.window_ns
            )
        )
