"""Asynchronous corner detection for event-camera streams.

The package turns a raw (t, x, y, polarity) event stream into a sparse
stream of corner events, in four stages: a refractory filter drops
redundant events, per-polarity time surfaces keep the freshest
timestamp of every pixel, a two-ring arc test nominates candidate
corners from the local surface geometry, and a gradient corner response
on the binarized patch confirms or rejects each candidate.

Quick start::

    from evcorner import Detector, DetectorConfig, synth

    events, tracks = synth.generate()
    det = Detector(DetectorConfig(variant="fa-harris"))
    corners = det.process_stream(events)
"""

from .stream import (
    DAVIS240,
    NEGATIVE,
    NEVER,
    POSITIVE,
    CornerEvent,
    Event,
    EventArray,
    SensorGeometry,
    check_monotone,
    subsequence_mask,
    validate_event,
)
from .masks import DEFAULT_MASK, CircleMask
from .filtering import DEFAULT_WINDOW_NS, RefractoryFilter
from .sae import GlobalSae, LocalPatch
from .candidates import (
    arc_admits,
    arc_admits_bruteforce,
    select_candidate,
    select_candidate_bruteforce,
)
from .harris import (
    BinaryPatch,
    GradientMoments,
    RefinerConfig,
    binarize,
    gaussian_window_5x5,
    moments,
    refine,
    score,
    sobel_kernels_5x5,
)
from .detector import VARIANTS, Detector, DetectorConfig, StreamCounters, detect
from .dataset_io import (
    CornerTrack,
    DataError,
    TrackPoint,
    read_corners,
    read_events,
    read_tracks,
    write_corners,
    write_events,
    write_tracks,
)
from .synth import SceneSpec, generate
from .evaluation import (
    BenchmarkResult,
    LabelCounts,
    Metrics,
    benchmark_surface_updates,
    benchmark_throughput,
    compute_metrics,
    label_events,
    merge_corner_sets,
    track_distances,
)

__version__ = "0.1.0"

__all__ = [
    "DAVIS240",
    "DEFAULT_MASK",
    "DEFAULT_WINDOW_NS",
    "NEGATIVE",
    "NEVER",
    "POSITIVE",
    "VARIANTS",
    "BenchmarkResult",
    "BinaryPatch",
    "CircleMask",
    "CornerEvent",
    "CornerTrack",
    "DataError",
    "Detector",
    "DetectorConfig",
    "Event",
    "EventArray",
    "GlobalSae",
    "GradientMoments",
    "LabelCounts",
    "LocalPatch",
    "Metrics",
    "RefinerConfig",
    "RefractoryFilter",
    "SceneSpec",
    "SensorGeometry",
    "StreamCounters",
    "TrackPoint",
    "arc_admits",
    "arc_admits_bruteforce",
    "benchmark_surface_updates",
    "benchmark_throughput",
    "binarize",
    "check_monotone",
    "compute_metrics",
    "detect",
    "gaussian_window_5x5",
    "generate",
    "label_events",
    "merge_corner_sets",
    "moments",
    "read_corners",
    "read_events",
    "read_tracks",
    "refine",
    "score",
    "select_candidate",
    "select_candidate_bruteforce",
    "sobel_kernels_5x5",
    "subsequence_mask",
    "track_distances",
    "validate_event",
    "write_corners",
    "write_events",
    "write_tracks",
]
