"""Detection quality metrics and throughput measurement.

Ground truth is a set of corner tracks (time-stamped trajectories of
true corner points).  Every event is judged by its distance to the
nearest track, linearly interpolated to the event's own timestamp:

* within ``r_tp``   (default 3.5 px): a true corner site -- a detection
  counts as TP, a miss as FN;
* within ``r_fp``   (default 5 px): an uncertain ring -- a detection
  counts as FP, a non-detection as TN;
* farther away, or at a time no track covers: ignored entirely.

Rates are percentages; a rate whose denominator is empty is reported
as None (absent), never coerced to 0 or 100.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .dataset_io import CornerTrack
from .detector import Detector, DetectorConfig
from .sae import GlobalSae
from .stream import EventArray, SensorGeometry, subsequence_mask

DEFAULT_R_TP = 3.5
DEFAULT_R_FP = 5.0


@dataclass(frozen=True)
class LabelCounts:
    """Confusion counts over the labeled (non-ignored) events."""

    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def labeled(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class Metrics:
    """Percentage metrics; None where the defining ratio has no data."""

    false_positive_rate: Optional[float]
    accuracy: Optional[float]
    reduction: Optional[float]
    counts: LabelCounts
    n_events: int
    n_corners: int


def track_distances(events: EventArray, tracks: Sequence[CornerTrack]) -> np.ndarray:
    """Distance from each event to the nearest track at the event's time.

    Tracks are piecewise-linear in time between their samples.  Events
    at times no track covers get +inf.
    """
    if len(tracks) == 0:
        raise ValueError("at least one ground-truth track is required")
    n = len(events)
    best = np.full(n, np.inf)
    ts = events.t
    ex = events.x.astype(np.float64)
    ey = events.y.astype(np.float64)
    for tr in tracks:
        if len(tr.t) == 0:
            continue
        lo, hi = tr.t[0], tr.t[-1]
        covered = (ts >= lo) & (ts <= hi)
        if not np.any(covered):
            continue
        seg = np.searchsorted(tr.t, ts[covered], side="right") - 1
        seg = np.clip(seg, 0, max(len(tr.t) - 2, 0))
        if len(tr.t) == 1:
            ix = np.full(seg.shape, tr.x[0])
            iy = np.full(seg.shape, tr.y[0])
        else:
            t0 = tr.t[seg]
            t1 = tr.t[seg + 1]
            frac = (ts[covered] - t0) / (t1 - t0)
            ix = tr.x[seg] + frac * (tr.x[seg + 1] - tr.x[seg])
            iy = tr.y[seg] + frac * (tr.y[seg + 1] - tr.y[seg])
        d = np.hypot(ex[covered] - ix, ey[covered] - iy)
        best[covered] = np.minimum(best[covered], d)
    return best


def label_events(
    events: EventArray,
    corners: EventArray,
    tracks: Sequence[CornerTrack],
    r_tp: float = DEFAULT_R_TP,
    r_fp: float = DEFAULT_R_FP,
) -> LabelCounts:
    """Confusion counts for a detection run against ground-truth tracks.

    `corners` must be the detector's output on `events` (an ordered
    subsequence); ValueError otherwise.  Events beyond ``r_fp`` of all
    tracks, or at uncovered times, influence nothing.
    """
    if r_tp <= 0 or r_fp < r_tp:
        raise ValueError(f"need 0 < r_tp <= r_fp, got {r_tp}, {r_fp}")
    detected = subsequence_mask(events, corners)
    d = track_distances(events, tracks)
    near = d <= r_tp
    ring = (d > r_tp) & (d <= r_fp)
    return LabelCounts(
        tp=int(np.sum(near & detected)),
        fn=int(np.sum(near & ~detected)),
        fp=int(np.sum(ring & detected)),
        tn=int(np.sum(ring & ~detected)),
    )


def compute_metrics(counts: LabelCounts, n_events: int, n_corners: int) -> Metrics:
    """Percentage metrics from confusion counts and stream totals.

    false_positive_rate = 100 * fp / (fp + tn)
    accuracy            = 100 * tp / (tp + fp)
    reduction           = 100 * (n_events - n_corners) / n_events
    Each is None when its denominator is zero.
    """
    if n_corners > n_events:
        raise ValueError(
            f"n_corners ({n_corners}) cannot exceed n_events ({n_events})"
        )
    if min(counts.tp, counts.fp, counts.fn, counts.tn) < 0:
        raise ValueError("confusion counts must be non-negative")
    fpr = None
    if counts.fp + counts.tn > 0:
        fpr = 100.0 * counts.fp / (counts.fp + counts.tn)
    acc = None
    if counts.tp + counts.fp > 0:
        acc = 100.0 * counts.tp / (counts.tp + counts.fp)
    red = None
    if n_events > 0:
        red = 100.0 * (n_events - n_corners) / n_events
    return Metrics(
        false_positive_rate=fpr,
        accuracy=acc,
        reduction=red,
        counts=counts,
        n_events=n_events,
        n_corners=n_corners,
    )


def merge_corner_sets(
    primary: np.ndarray, secondary: np.ndarray, radius: float = 5.0
) -> np.ndarray:
    """Union of two corner position sets with near-duplicates removed.

    Keeps every point of `primary` plus the points of `secondary` at
    least `radius` away from all primary points.  Positions are (n, 2)
    float arrays of (x, y).
    """
    primary = np.asarray(primary, dtype=np.float64).reshape(-1, 2)
    secondary = np.asarray(secondary, dtype=np.float64).reshape(-1, 2)
    if len(secondary) == 0:
        return primary.copy()
    if len(primary) == 0:
        return secondary.copy()
    diff = secondary[:, None, :] - primary[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    keep = dist.min(axis=1) >= radius
    return np.concatenate([primary, secondary[keep]], axis=0)


@dataclass(frozen=True)
class BenchmarkResult:
    """Wall-clock cost of one full-stream replay."""

    variant: str
    n_events: int
    seconds: float

    @property
    def us_per_event(self) -> float:
        return 1e6 * self.seconds / self.n_events

    @property
    def meps(self) -> float:
        """Sustained throughput in millions of events per second."""
        return self.n_events / self.seconds / 1e6


def _warmup_events(geometry: SensorGeometry) -> EventArray:
    rng = np.random.default_rng(0)
    n = 512
    return EventArray(
        np.arange(n, dtype=np.int64) * 1000,
        rng.integers(0, geometry.width, n).astype(np.int32),
        rng.integers(0, geometry.height, n).astype(np.int32),
        rng.integers(0, 2, n).astype(np.int8),
    )


def benchmark_throughput(config: DetectorConfig, events: EventArray) -> BenchmarkResult:
    """Time one replay of `events` through a fresh detector.

    The compiled replay loop is exercised on a small throwaway stream
    first, so compilation never lands inside the timed section.
    """
    if len(events) == 0:
        raise ValueError("cannot benchmark an empty stream")
    Detector(config).process_stream(_warmup_events(config.geometry))
    det = Detector(config)
    start = time.perf_counter()
    det.process_stream_status(events)
    elapsed = time.perf_counter() - start
    return BenchmarkResult(
        variant=config.variant, n_events=len(events), seconds=elapsed
    )


def benchmark_surface_updates(
    geometry: SensorGeometry, events: EventArray
) -> BenchmarkResult:
    """Time only the per-event time-surface writes for a stream.

    Measures the cost of keeping the surfaces current, for comparison
    against a full detection replay of the same stream.  (All events
    are written, which slightly over-counts a filtered pipeline's
    update work.)
    """
    if len(events) == 0:
        raise ValueError("cannot benchmark an empty stream")
    warm = _warmup_events(geometry)
    _kernels.run_surface_updates(
        GlobalSae(geometry).surfaces, warm.t, warm.x, warm.y, warm.p
    )
    sae = GlobalSae(geometry)
    start = time.perf_counter()
    _kernels.run_surface_updates(sae.surfaces, events.t, events.x, events.y, events.p)
    elapsed = time.perf_counter() - start
    return BenchmarkResult(variant="updates-only", n_events=len(events), seconds=elapsed)
