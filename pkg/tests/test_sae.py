import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evcorner import (
    DAVIS240,
    NEGATIVE,
    NEVER,
    POSITIVE,
    Event,
    GlobalSae,
    SensorGeometry,
)


def test_fresh_surface_is_all_never():
    sae = GlobalSae(SensorGeometry(width=12, height=10))
    assert sae.surfaces.shape == (2, 10, 12)
    assert (sae.surfaces == NEVER).all()


def test_update_touches_exactly_one_cell():
    sae = GlobalSae(SensorGeometry(width=12, height=10))
    before = sae.surfaces.copy()
    sae.update(Event(500, 3, 7, POSITIVE))
    diff = sae.surfaces != before
    assert diff.sum() == 1
    assert sae.surface(POSITIVE)[7, 3] == 500
    assert sae.surface(NEGATIVE)[7, 3] == NEVER


def test_update_is_per_polarity():
    sae = GlobalSae(DAVIS240)
    sae.update(Event(100, 5, 5, POSITIVE))
    sae.update(Event(200, 5, 5, NEGATIVE))
    assert sae.surface(POSITIVE)[5, 5] == 100
    assert sae.surface(NEGATIVE)[5, 5] == 200


def test_repeated_update_overwrites():
    sae = GlobalSae(DAVIS240)
    sae.update(Event(100, 5, 5, POSITIVE))
    sae.update(Event(900, 5, 5, POSITIVE))
    assert sae.surface(POSITIVE)[5, 5] == 900


class TestExtractLocal:
    def test_border_event_returns_none(self):
        sae = GlobalSae(DAVIS240)
        assert sae.extract_local(Event(0, 3, 90, POSITIVE)) is None
        assert sae.extract_local(Event(0, 236, 90, POSITIVE)) is None
        assert sae.extract_local(Event(0, 90, 3, POSITIVE)) is None
        assert sae.extract_local(Event(0, 90, 176, POSITIVE)) is None

    def test_interior_window_fits_exactly_at_four(self):
        sae = GlobalSae(DAVIS240)
        e = Event(10, 4, 4, POSITIVE)
        sae.update(e)
        patch = sae.extract_local(e)
        assert patch is not None
        assert patch.values.shape == (9, 9)
        assert patch.center_x == 4 and patch.center_y == 4

    def test_last_interior_column(self):
        sae = GlobalSae(DAVIS240)
        assert sae.extract_local(Event(0, 235, 90, POSITIVE)) is not None
        assert sae.extract_local(Event(0, 175, 90, POSITIVE)) is not None

    def test_center_cell_holds_the_event_timestamp(self):
        sae = GlobalSae(DAVIS240)
        e = Event(777, 50, 60, NEGATIVE)
        sae.update(e)
        patch = sae.extract_local(e)
        assert patch.values[4, 4] == 777
        assert patch.center_t == 777

    def test_orientation_of_window(self):
        # cell (x+2, y-1) must land at values[4-1, 4+2]
        sae = GlobalSae(DAVIS240)
        sae.update(Event(42, 52, 59, POSITIVE))
        patch = sae.extract_local(Event(100, 50, 60, POSITIVE))
        assert patch.values[3, 6] == 42

    def test_extraction_is_a_copy(self):
        sae = GlobalSae(DAVIS240)
        e = Event(5, 50, 60, POSITIVE)
        sae.update(e)
        patch = sae.extract_local(e)
        patch.values[0, 0] = 12345
        assert sae.surface(POSITIVE)[56, 46] == NEVER

    def test_polarity_selects_the_surface(self):
        sae = GlobalSae(DAVIS240)
        sae.update(Event(1, 50, 60, POSITIVE))
        patch = sae.extract_local(Event(2, 50, 60, NEGATIVE))
        # negative surface never saw the positive event
        assert patch.values[4, 4] == NEVER


@given(st.data())
@settings(deadline=None, max_examples=50)
def test_surface_equals_naive_last_timestamp_map(data):
    """Replaying any stream, the surface always equals a dict of the
    latest timestamp per (pixel, polarity)."""
    g = SensorGeometry(width=10, height=9)
    sae = GlobalSae(g)
    shadow: dict[tuple[int, int, int], int] = {}
    t = 0
    n = data.draw(st.integers(min_value=0, max_value=80))
    for _ in range(n):
        t += data.draw(st.integers(min_value=0, max_value=100))
        x = data.draw(st.integers(min_value=0, max_value=9))
        y = data.draw(st.integers(min_value=0, max_value=8))
        p = data.draw(st.integers(min_value=0, max_value=1))
        sae.update(Event(t, x, y, p))
        shadow[(p, y, x)] = t
        for (sp, sy, sx), st_ in shadow.items():
            assert sae.surfaces[sp, sy, sx] == st_
        assert (sae.surfaces != NEVER).sum() == len(shadow)


def test_surface_timestamps_never_decrease_on_ordered_stream(rng):
    g = SensorGeometry(width=16, height=16)
    sae = GlobalSae(g)
    t = 0
    prev_max = np.full((2, 16, 16), NEVER, dtype=np.int64)
    for _ in range(500):
        t += int(rng.integers(0, 50))
        x = int(rng.integers(0, 16))
        y = int(rng.integers(0, 16))
        p = int(rng.integers(0, 2))
        sae.update(Event(t, x, y, p))
        assert sae.surfaces[p, y, x] >= prev_max[p, y, x] or prev_max[p, y, x] == NEVER
        prev_max[p, y, x] = sae.surfaces[p, y, x]
