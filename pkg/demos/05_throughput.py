"""Replay speed of each pipeline on one million random events.

Random streams are the worst case for the gate (nothing is a corner,
but everything must still be filtered and surface-stamped), which makes
them a fair floor for sustained throughput.
"""

import numpy as np

from evcorner import (
    DAVIS240,
    DetectorConfig,
    EventArray,
    benchmark_surface_updates,
    benchmark_throughput,
)

rng = np.random.default_rng(1)
n = 1_000_000
events = EventArray(
    np.cumsum(rng.integers(0, 2000, n)).astype(np.int64),
    rng.integers(0, DAVIS240.width, n).astype(np.int32),
    rng.integers(0, DAVIS240.height, n).astype(np.int32),
    rng.integers(0, 2, n).astype(np.int8),
)

print(f"{n} events, {DAVIS240.width}x{DAVIS240.height} sensor")
for variant in ("arc-only", "fa-harris", "g-eharris"):
    r = benchmark_throughput(DetectorConfig(variant=variant), events)
    print(f"{variant:12s} {r.us_per_event:7.3f} us/event  {r.meps:6.2f} Meps")

r = benchmark_surface_updates(DAVIS240, events)
print(f"{'surface only':12s} {r.us_per_event:7.3f} us/event  {r.meps:6.2f} Meps")
