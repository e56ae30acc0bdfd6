"""Plain-text event, corner, and track files.

Event / corner files: one event per line, ``t x y p``, where t is
decimal seconds, x and y are integer pixels and p is 1 (positive) or
0 (negative).  Track files: one point per line, ``track_id t x y``,
with float x/y and points of each track sorted by time.

Timestamps are converted to integer nanoseconds on read by scaling and
rounding; files written here carry nine decimal places, so read/write
round-trips are lossless for any stream shorter than about a day.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .stream import NS_PER_S, Event, EventArray, SensorGeometry, validate_event

PathLike = Union[str, Path]


class DataError(ValueError):
    """A file's contents violate the format or the stream contract."""


def _seconds_to_ns(value: float) -> int:
    return round(value * NS_PER_S)


def _format_ns(t_ns: int) -> str:
    return f"{t_ns // NS_PER_S}.{t_ns % NS_PER_S:09d}"


def read_events(path: PathLike, geometry: SensorGeometry) -> EventArray:
    """Load an event file, validating bounds, polarity and time order.

    Malformed lines, out-of-range fields and timestamp regressions all
    raise :class:`DataError` naming the file and 1-based line number.
    Blank lines are not allowed.
    """
    path = Path(path)
    ts, xs, ys, ps = [], [], [], []
    prev_t = None
    with open(path, "r") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if len(parts) != 4:
                raise DataError(
                    f"{path}:{lineno}: expected 4 fields 't x y p', got {len(parts)}"
                )
            try:
                t_s = float(parts[0])
                x = int(parts[1])
                y = int(parts[2])
                p = int(parts[3])
            except ValueError:
                raise DataError(f"{path}:{lineno}: unparsable field in {line!r}") from None
            t = _seconds_to_ns(t_s)
            problem = validate_event(Event(t, x, y, p), geometry)
            if problem is not None:
                raise DataError(f"{path}:{lineno}: {problem}")
            if prev_t is not None and t < prev_t:
                raise DataError(
                    f"{path}:{lineno}: timestamp decreases "
                    f"({_format_ns(t)} after {_format_ns(prev_t)})"
                )
            prev_t = t
            ts.append(t)
            xs.append(x)
            ys.append(y)
            ps.append(p)
    return EventArray(
        np.array(ts, dtype=np.int64),
        np.array(xs, dtype=np.int32),
        np.array(ys, dtype=np.int32),
        np.array(ps, dtype=np.int8),
    )


def write_events(path: PathLike, events: EventArray) -> None:
    """Write events one per line with nine-decimal timestamps."""
    with open(path, "w") as fh:
        for i in range(len(events)):
            fh.write(
                f"{_format_ns(int(events.t[i]))} "
                f"{events.x[i]} {events.y[i]} {events.p[i]}\n"
            )


# Corner files share the event format.
read_corners = read_events
write_corners = write_events


@dataclass(frozen=True)
class TrackPoint:
    """One ground-truth sample: a track's position at a moment in time."""

    track_id: int
    t: int  # nanoseconds
    x: float
    y: float


@dataclass(frozen=True)
class CornerTrack:
    """A ground-truth corner trajectory as parallel time/position arrays.

    Positions between samples are obtained by linear interpolation;
    outside [t[0], t[-1]] the track is undefined.
    """

    track_id: int
    t: np.ndarray  # int64 nanoseconds, strictly increasing
    x: np.ndarray  # float64
    y: np.ndarray  # float64

    def __len__(self) -> int:
        return len(self.t)


def read_tracks(path: PathLike) -> list[CornerTrack]:
    """Load a track file into one CornerTrack per track id.

    Tracks may interleave in the file, but each track's own points must
    appear in strictly increasing time order (so duplicate timestamps
    within a track are rejected).  Tracks are returned in order of
    first appearance.
    """
    path = Path(path)
    order: list[int] = []
    data: dict[int, list[tuple[int, float, float]]] = {}
    with open(path, "r") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if len(parts) != 4:
                raise DataError(
                    f"{path}:{lineno}: expected 4 fields 'track_id t x y', "
                    f"got {len(parts)}"
                )
            try:
                tid = int(parts[0])
                t = _seconds_to_ns(float(parts[1]))
                x = float(parts[2])
                y = float(parts[3])
            except ValueError:
                raise DataError(f"{path}:{lineno}: unparsable field in {line!r}") from None
            if t < 0:
                raise DataError(f"{path}:{lineno}: negative timestamp")
            if tid not in data:
                order.append(tid)
                data[tid] = []
            elif t <= data[tid][-1][0]:
                raise DataError(
                    f"{path}:{lineno}: track {tid} time does not increase"
                )
            data[tid].append((t, x, y))
    tracks = []
    for tid in order:
        pts = data[tid]
        tracks.append(
            CornerTrack(
                track_id=tid,
                t=np.array([p[0] for p in pts], dtype=np.int64),
                x=np.array([p[1] for p in pts], dtype=np.float64),
                y=np.array([p[2] for p in pts], dtype=np.float64),
            )
        )
    return tracks


def write_tracks(path: PathLike, tracks: list[CornerTrack]) -> None:
    """Write tracks one point per line, each track's points in time order."""
    with open(path, "w") as fh:
        for tr in tracks:
            for i in range(len(tr)):
                fh.write(
                    f"{tr.track_id} {_format_ns(int(tr.t[i]))} "
                    f"{tr.x[i]:.6f} {tr.y[i]:.6f}\n"
                )
