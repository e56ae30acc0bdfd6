"""Core event-stream model: events, sensor geometry, batch arrays.

An event camera reports per-pixel brightness changes as an asynchronous
stream of (t, x, y, polarity) tuples.  Everything downstream (filtering,
time surfaces, detection) consumes this model.

Timestamps are kept as integer nanoseconds internally so that ordering
and refractory comparisons are exact; conversion from/to the decimal
seconds used by the on-disk format lives in :mod:`evcorner.dataset_io`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

# Polarity codes. These match the on-disk convention: 1 = brightness
# increase (positive), 0 = decrease (negative).
POSITIVE = 1
NEGATIVE = 0

# Timestamp value meaning "no event has ever been recorded here".
# Comparison-only sentinel: never do arithmetic with it.
NEVER = np.iinfo(np.int64).min

NS_PER_S = 1_000_000_000
NS_PER_MS = 1_000_000
NS_PER_US = 1_000


@dataclass(frozen=True)
class Event:
    """A single camera event.

    t: nanoseconds since stream start (non-negative).
    x, y: pixel column / row.
    p: POSITIVE or NEGATIVE.
    """

    t: int
    x: int
    y: int
    p: int


# A detected corner is just an event the detector chose to keep.
CornerEvent = Event


@dataclass(frozen=True)
class SensorGeometry:
    """Pixel-array dimensions of the sensor that produced a stream."""

    width: int
    height: int

    def __post_init__(self) -> None:
        # A 9x9 neighborhood must fit somewhere on the sensor.
        if self.width < 9 or self.height < 9:
            raise ValueError(
                f"sensor must be at least 9x9, got {self.width}x{self.height}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        """(height, width), numpy axis order."""
        return (self.height, self.width)

    def contains(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height


#: Geometry of the DAVIS240 family of sensors, the default for all tools.
DAVIS240 = SensorGeometry(width=240, height=180)


class EventArray:
    """Column-oriented batch of events (struct-of-arrays).

    Large streams are processed as four parallel numpy arrays rather
    than per-event objects; the compiled replay loops index these
    directly.
    """

    __slots__ = ("t", "x", "y", "p")

    def __init__(
        self,
        t: np.ndarray,
        x: np.ndarray,
        y: np.ndarray,
        p: np.ndarray,
    ) -> None:
        self.t = np.ascontiguousarray(t, dtype=np.int64)
        self.x = np.ascontiguousarray(x, dtype=np.int32)
        self.y = np.ascontiguousarray(y, dtype=np.int32)
        self.p = np.ascontiguousarray(p, dtype=np.int8)
        n = len(self.t)
        if not (len(self.x) == len(self.y) == len(self.p) == n):
            raise ValueError("t, x, y, p must have equal length")

    @classmethod
    def empty(cls) -> "EventArray":
        return cls(
            np.empty(0, np.int64),
            np.empty(0, np.int32),
            np.empty(0, np.int32),
            np.empty(0, np.int8),
        )

    @classmethod
    def from_events(cls, events: Iterable[Event]) -> "EventArray":
        evs = list(events)
        return cls(
            np.array([e.t for e in evs], np.int64),
            np.array([e.x for e in evs], np.int32),
            np.array([e.y for e in evs], np.int32),
            np.array([e.p for e in evs], np.int8),
        )

    def __len__(self) -> int:
        return len(self.t)

    def __getitem__(self, i: int) -> Event:
        return Event(int(self.t[i]), int(self.x[i]), int(self.y[i]), int(self.p[i]))

    def __iter__(self) -> Iterator[Event]:
        for i in range(len(self)):
            yield self[i]

    def take(self, index: np.ndarray) -> "EventArray":
        """Select rows by integer index array or boolean mask."""
        return EventArray(self.t[index], self.x[index], self.y[index], self.p[index])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventArray):
            return NotImplemented
        return (
            np.array_equal(self.t, other.t)
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
            and np.array_equal(self.p, other.p)
        )

    def __repr__(self) -> str:
        return f"EventArray(n={len(self)})"


def validate_event(e: Event, geometry: SensorGeometry) -> Optional[str]:
    """Check a single event against sensor bounds and polarity codes.

    Returns None when the event is well-formed, otherwise a description
    naming the violated bound.
    """
    if e.t < 0:
        return f"timestamp must be non-negative, got {e.t}"
    if not 0 <= e.x < geometry.width:
        return f"x out of range [0, {geometry.width}): got {e.x}"
    if not 0 <= e.y < geometry.height:
        return f"y out of range [0, {geometry.height}): got {e.y}"
    if e.p not in (POSITIVE, NEGATIVE):
        return f"polarity must be {NEGATIVE} or {POSITIVE}, got {e.p}"
    return None


def check_monotone(
    events: Union[EventArray, Sequence[Event], np.ndarray],
) -> Optional[int]:
    """Verify non-decreasing timestamps.

    Returns the index of the first event whose timestamp is smaller
    than its predecessor's, or None when the stream is ordered.
    Accepts an EventArray, a timestamp array, or a sequence of Events.
    """
    if isinstance(events, EventArray):
        ts = events.t
    elif isinstance(events, np.ndarray):
        ts = events
    else:
        ts = np.array([e.t for e in events], dtype=np.int64)
    if len(ts) < 2:
        return None
    bad = np.nonzero(np.diff(ts) < 0)[0]
    if len(bad) == 0:
        return None
    return int(bad[0]) + 1


def subsequence_mask(events: EventArray, subset: EventArray) -> np.ndarray:
    """Mark which events of `events` appear in `subset`, in order.

    `subset` must be an ordered subsequence of `events` (same tuples,
    same relative order); raises ValueError otherwise.  Returns a
    boolean mask over `events`.
    """
    n, m = len(events), len(subset)
    mask = np.zeros(n, dtype=bool)
    j = 0
    for i in range(n):
        if j == m:
            break
        if (
            events.t[i] == subset.t[j]
            and events.x[i] == subset.x[j]
            and events.y[i] == subset.y[j]
            and events.p[i] == subset.p[j]
        ):
            mask[i] = True
            j += 1
    if j != m:
        raise ValueError(
            f"second stream is not an ordered subsequence: matched {j} of {m} events"
        )
    return mask
