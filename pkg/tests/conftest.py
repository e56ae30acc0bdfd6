import numpy as np
import pytest

from evcorner import DAVIS240, EventArray


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_stream(rng, n, geometry=DAVIS240, max_gap_ns=2000):
    """Monotone random event stream covering the whole sensor."""
    gaps = rng.integers(0, max_gap_ns, n)
    return EventArray(
        np.cumsum(gaps).astype(np.int64),
        rng.integers(0, geometry.width, n).astype(np.int32),
        rng.integers(0, geometry.height, n).astype(np.int32),
        rng.integers(0, 2, n).astype(np.int8),
    )
