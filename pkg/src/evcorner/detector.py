"""Streaming corner detectors.

Three variants share one state layout (refractory filter + per-polarity
time surfaces) and one replay loop:

* ``fa-harris``   -- filter, surface update, arc candidate gate, then
                     gradient refinement of candidates only.
* ``g-eharris``   -- no gate: every filtered, non-border event is
                     refined.  The expensive baseline.
* ``arc-only``    -- the gate alone decides; no refinement.

Because the gate never touches shared state, ``fa-harris`` corners are
always a subset of ``g-eharris`` corners on the same stream and config.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .filtering import DEFAULT_WINDOW_NS, RefractoryFilter
from .harris import RefinerConfig
from .masks import DEFAULT_MASK, CircleMask
from .sae import GlobalSae
from .stream import DAVIS240, Event, EventArray, SensorGeometry

VARIANTS = ("fa-harris", "g-eharris", "arc-only")

_VARIANT_CODES = {
    "fa-harris": _kernels.VARIANT_FA_HARRIS,
    "g-eharris": _kernels.VARIANT_G_EHARRIS,
    "arc-only": _kernels.VARIANT_ARC_ONLY,
}


@dataclass(frozen=True)
class DetectorConfig:
    """Everything that determines a detector's behavior on a stream."""

    geometry: SensorGeometry = DAVIS240
    variant: str = "fa-harris"
    filter_enabled: bool = True
    filter_window_ns: int = DEFAULT_WINDOW_NS
    mask: CircleMask = DEFAULT_MASK
    refiner: RefinerConfig = field(default_factory=RefinerConfig)

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(
                f"unknown variant {self.variant!r}, expected one of {VARIANTS}"
            )
        if self.filter_window_ns < 0:
            raise ValueError("filter window must be non-negative")


@dataclass
class StreamCounters:
    """Running totals over everything a detector has processed.

    Monotone by construction:
    events_in >= events_passed_filter >= candidates >= corners.
    For ``g-eharris`` the candidate stage is the refinement itself, so
    `candidates` counts refined events; for ``arc-only`` candidates and
    corners coincide.
    """

    events_in: int = 0
    events_passed_filter: int = 0
    candidates: int = 0
    corners: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "events_in": self.events_in,
            "events_passed_filter": self.events_passed_filter,
            "candidates": self.candidates,
            "corners": self.corners,
        }


class Detector:
    """Stateful streaming detector for one of the pipeline variants."""

    def __init__(self, config: DetectorConfig | None = None, **overrides) -> None:
        if config is None:
            config = DetectorConfig(**overrides)
        elif overrides:
            config = replace(config, **overrides)
        self.config = config
        g = config.geometry
        self.filter = RefractoryFilter(g, config.filter_window_ns)
        self.gsae = GlobalSae(g)
        self.counters = StreamCounters()
        self._variant_code = _VARIANT_CODES[config.variant]
        # Scratch reused by the scalar path.
        self._circ_buf = np.empty(20, dtype=np.int64)
        self._patch_buf = np.empty((9, 9), dtype=np.int64)
        self._bits_buf = np.empty((9, 9), dtype=np.float64)
        self._args = self._build_step_args()

    def _build_step_args(self):
        cfg = self.config
        ref = cfg.refiner
        return (
            cfg.filter_enabled,
            np.int64(cfg.filter_window_ns),
            self._variant_code,
            cfg.mask.inner_dx,
            cfg.mask.inner_dy,
            cfg.mask.inner_range[0],
            cfg.mask.inner_range[1],
            cfg.mask.outer_dx,
            cfg.mask.outer_dy,
            cfg.mask.outer_range[0],
            cfg.mask.outer_range[1],
            ref.n_newest,
            np.ascontiguousarray(ref.kern_x, dtype=np.float64),
            np.ascontiguousarray(ref.kern_y, dtype=np.float64),
            ref.weights,
            ref.alpha,
            ref.threshold,
        )

    def process_event(self, e: Event) -> bool:
        """Run one event through the pipeline; True when it is a corner.

        State (filter memory, time surfaces, counters) advances whether
        or not the event survives.
        """
        st = _kernels.detect_step(
            self.gsae.surfaces,
            self.filter.last_t,
            self.filter.last_p,
            np.int64(e.t),
            np.int64(e.x),
            np.int64(e.y),
            np.int64(e.p),
            *self._args,
            self._circ_buf,
            self._patch_buf,
            self._bits_buf,
        )
        c = self.counters
        c.events_in += 1
        if st >= _kernels.ST_BORDER:
            c.events_passed_filter += 1
        if st >= _kernels.ST_NOT_CORNER:
            c.candidates += 1
        if st == _kernels.ST_CORNER:
            c.corners += 1
        return st == _kernels.ST_CORNER

    def process_stream(self, events: EventArray) -> EventArray:
        """Replay a batch of events; returns the corners, in order.

        Equivalent to calling :meth:`process_event` on every event (the
        same compiled step runs either way), but the loop stays in
        machine code.
        """
        status = self.process_stream_status(events)
        return events.take(status == _kernels.ST_CORNER)

    def process_stream_status(self, events: EventArray) -> np.ndarray:
        """Like :meth:`process_stream` but returns per-event outcome codes."""
        n = len(events)
        status = np.empty(n, dtype=np.uint8)
        counters = np.zeros(4, dtype=np.int64)
        _kernels.run_stream(
            self.gsae.surfaces,
            self.filter.last_t,
            self.filter.last_p,
            events.t,
            events.x,
            events.y,
            events.p,
            *self._args,
            status,
            counters,
        )
        c = self.counters
        c.events_in += int(counters[0])
        c.events_passed_filter += int(counters[1])
        c.candidates += int(counters[2])
        c.corners += int(counters[3])
        return status


def detect(events: EventArray, config: DetectorConfig | None = None, **overrides):
    """One-shot detection on a whole stream with a fresh detector.

    Returns (corners, counters).
    """
    det = Detector(config, **overrides)
    corners = det.process_stream(events)
    return corners, det.counters
