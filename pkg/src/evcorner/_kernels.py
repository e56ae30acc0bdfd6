"""Compiled inner loops shared by the module-level operations and the
stream replay drivers.

Everything here is numba-jitted and operates on plain numpy arrays.
The Python-facing wrappers (filtering, sae, candidates, harris,
detector) call these same functions, so the per-operation API and the
fused per-event pipeline cannot drift apart.

Timestamp sentinel: NEVER marks a never-touched cell.  It is only ever
*compared*, never used in arithmetic (it sits at the int64 minimum, so
any subtraction involving it would overflow).
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .stream import NEVER

# Variant codes used by the fused step (kept numeric for the jit).
VARIANT_FA_HARRIS = 0
VARIANT_G_EHARRIS = 1
VARIANT_ARC_ONLY = 2

# Per-event step outcome codes, ordered by pipeline progress.
ST_FILTERED = 0   # rejected by the refractory filter
ST_BORDER = 1     # passed filter, too close to the sensor edge
ST_REJECTED = 2   # reached the arc gate, no valid arc
ST_NOT_CORNER = 3  # refined, score at or below threshold
ST_CORNER = 4     # emitted as a corner


@njit(cache=True)
def filter_step(last_t, last_p, t, x, y, p, window_ns):
    """Refractory filter decision for one event; always records the event.

    Passes when the pixel has no prior event, when more time than
    `window_ns` has elapsed (a gap of exactly `window_ns` is rejected),
    or when the polarity flipped.
    """
    lt = last_t[y, x]
    if lt == NEVER:
        passed = True
    elif p != last_p[y, x]:
        passed = True
    elif t - lt > window_ns:
        passed = True
    else:
        passed = False
    last_t[y, x] = t
    last_p[y, x] = p
    return passed


@njit(cache=True)
def arc_admits(vals, lo, hi):
    """Newest-arc test on one ring of timestamps.

    `vals` holds the ring samples in traversal order.  Accepts when
    some contiguous arc (wrapping allowed) is strictly newer than the
    whole rest of the ring and its length falls in [lo, hi] or in
    [n-hi, n-lo].

    Greedy search: start from the newest sample (lowest index wins
    ties), repeatedly extend toward whichever neighbor is newer (lower
    index wins ties), testing the acceptance rule at every length up
    to n - lo.
    """
    n = vals.shape[0]
    best = vals[0]
    start = 0
    for i in range(1, n):
        if vals[i] > best:
            best = vals[i]
            start = i
    left = start
    right = start
    arc_min = best
    size = 1
    max_size = n - lo
    while True:
        if (lo <= size <= hi) or (n - hi <= size):
            # Valid iff every sample outside the arc is strictly older
            # than the oldest sample inside it.
            ok = True
            j = right + 1
            for _ in range(n - size):
                v = vals[j % n]
                if v >= arc_min:
                    ok = False
                    break
                j += 1
            if ok:
                return True
        if size == max_size:
            return False
        li = (left + n - 1) % n
        ri = (right + 1) % n
        lv = vals[li]
        rv = vals[ri]
        if lv > rv or (lv == rv and li < ri):
            left = li
            if lv < arc_min:
                arc_min = lv
        else:
            right = ri
            if rv < arc_min:
                arc_min = rv
        size += 1


@njit(cache=True)
def binarize_patch(patch, n_newest, out):
    """Write a 0/1 image of the `n_newest` most recent cells into `out`.

    `patch` is a 9x9 int64 timestamp window, `out` a 9x9 float64 array.
    Ties on the timestamp are broken row-major (earlier cell wins).  If
    fewer than `n_newest` cells have ever fired, all fired cells are
    set.  Returns the number of ones written.
    """
    m = 0
    for r in range(9):
        for c in range(9):
            out[r, c] = 0.0
            if patch[r, c] != NEVER:
                m += 1
    k = n_newest if n_newest < m else m
    for _ in range(k):
        bt = NEVER
        br = -1
        bc = -1
        for r in range(9):
            for c in range(9):
                if out[r, c] == 0.0:
                    v = patch[r, c]
                    if v != NEVER and (br < 0 or v > bt):
                        bt = v
                        br = r
                        bc = c
        out[br, bc] = 1.0
    return k


@njit(cache=True)
def window_moments(bits, kern_x, kern_y, weights):
    """Weighted second-moment sums of the gradient over a binary patch.

    Gradients are taken with the two 5x5 derivative kernels at the 25
    positions where the kernel fully fits (patch rows/cols 2..6); each
    position's contribution is scaled by `weights` indexed by position.
    Returns (a, b, c) = (sum w*gx^2, sum w*gy^2, sum w*gx*gy).
    """
    a = 0.0
    b = 0.0
    c = 0.0
    for py in range(2, 7):
        for px in range(2, 7):
            gx = 0.0
            gy = 0.0
            for u in range(5):
                for v in range(5):
                    if bits[py - 2 + u, px - 2 + v] != 0.0:
                        gx += kern_x[u, v]
                        gy += kern_y[u, v]
            w = weights[py - 2, px - 2]
            a += w * gx * gx
            b += w * gy * gy
            c += w * gx * gy
    return a, b, c


@njit(cache=True)
def detect_step(
    surfaces,
    flt_t,
    flt_p,
    t,
    x,
    y,
    p,
    filter_on,
    window_ns,
    variant,
    inner_dx,
    inner_dy,
    inner_lo,
    inner_hi,
    outer_dx,
    outer_dy,
    outer_lo,
    outer_hi,
    n_newest,
    kern_x,
    kern_y,
    weights,
    alpha,
    threshold,
    circ_buf,
    patch_buf,
    bits_buf,
):
    """Run one event through filter -> surface update -> gate -> refine.

    Returns one of the ST_* outcome codes.  `circ_buf` (int64[>=20]),
    `patch_buf` (int64[9,9]) and `bits_buf` (float64[9,9]) are caller
    scratch so replay loops do not allocate per event.
    """
    if filter_on:
        if not filter_step(flt_t, flt_p, t, x, y, p, window_ns):
            return ST_FILTERED

    height, width = surfaces.shape[1], surfaces.shape[2]
    surf = surfaces[p]
    surf[y, x] = t

    if x < 4 or x >= width - 4 or y < 4 or y >= height - 4:
        return ST_BORDER

    if variant != VARIANT_G_EHARRIS:
        n_in = inner_dx.shape[0]
        for i in range(n_in):
            circ_buf[i] = surf[y + inner_dy[i], x + inner_dx[i]]
        if not arc_admits(circ_buf[:n_in], inner_lo, inner_hi):
            return ST_REJECTED
        n_out = outer_dx.shape[0]
        for i in range(n_out):
            circ_buf[i] = surf[y + outer_dy[i], x + outer_dx[i]]
        if not arc_admits(circ_buf[:n_out], outer_lo, outer_hi):
            return ST_REJECTED
        if variant == VARIANT_ARC_ONLY:
            return ST_CORNER

    for r in range(9):
        for c in range(9):
            patch_buf[r, c] = surf[y - 4 + r, x - 4 + c]
    binarize_patch(patch_buf, n_newest, bits_buf)
    a, b, c = window_moments(bits_buf, kern_x, kern_y, weights)
    score = (a * b - c * c) - alpha * (a + b) * (a + b)
    if score > threshold:
        return ST_CORNER
    return ST_NOT_CORNER


@njit(cache=True)
def run_stream(
    surfaces,
    flt_t,
    flt_p,
    ts,
    xs,
    ys,
    ps,
    filter_on,
    window_ns,
    variant,
    inner_dx,
    inner_dy,
    inner_lo,
    inner_hi,
    outer_dx,
    outer_dy,
    outer_lo,
    outer_hi,
    n_newest,
    kern_x,
    kern_y,
    weights,
    alpha,
    threshold,
    status_out,
    counters,
):
    """Replay a whole stream through detect_step.

    `status_out` (uint8[n]) receives the per-event outcome code;
    `counters` (int64[4]) is incremented in place with
    [events_in, events_passed_filter, candidates, corners].
    """
    circ_buf = np.empty(20, dtype=np.int64)
    patch_buf = np.empty((9, 9), dtype=np.int64)
    bits_buf = np.empty((9, 9), dtype=np.float64)
    n = ts.shape[0]
    for i in range(n):
        st = detect_step(
            surfaces,
            flt_t,
            flt_p,
            ts[i],
            np.int64(xs[i]),
            np.int64(ys[i]),
            np.int64(ps[i]),
            filter_on,
            window_ns,
            variant,
            inner_dx,
            inner_dy,
            inner_lo,
            inner_hi,
            outer_dx,
            outer_dy,
            outer_lo,
            outer_hi,
            n_newest,
            kern_x,
            kern_y,
            weights,
            alpha,
            threshold,
            circ_buf,
            patch_buf,
            bits_buf,
        )
        status_out[i] = st
        counters[0] += 1
        if st >= ST_BORDER:
            counters[1] += 1
        if st >= ST_NOT_CORNER:
            counters[2] += 1
        if st == ST_CORNER:
            counters[3] += 1


@njit(cache=True)
def run_surface_updates(surfaces, ts, xs, ys, ps):
    """Apply only the time-surface writes of a replay (no detection).

    Used to measure how much of a full replay is spent maintaining the
    surfaces themselves.
    """
    n = ts.shape[0]
    for i in range(n):
        surfaces[ps[i], ys[i], xs[i]] = ts[i]


@njit(cache=True)
def run_filter_only(flt_t, flt_p, ts, xs, ys, ps, window_ns, passed_out):
    """Replay only the refractory filter, recording pass/reject flags."""
    n = ts.shape[0]
    for i in range(n):
        passed_out[i] = filter_step(
            flt_t, flt_p, ts[i], np.int64(xs[i]), np.int64(ys[i]),
            np.int64(ps[i]), window_ns,
        )
