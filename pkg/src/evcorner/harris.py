"""Gradient-based corner refinement on binarized time-surface patches.

The arc gate is cheap but permissive; surviving events get a classic
corner-response check.  The 9x9 timestamp patch is reduced to a binary
image of its most recent cells, image gradients are taken with 5x5
derivative kernels wherever they fully fit, and the usual
determinant-minus-trace response of the weighted gradient moments
decides corner vs. not-corner.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .masks import PATCH_SIZE
from .sae import LocalPatch

#: Default response cutoff.  The kernels are deliberately left
#: unnormalized, so scores live on the scale fixed by the integer
#: kernel weights; 8.0 separates straight-edge patterns (negative
#: response) from wedge patterns on that scale.
DEFAULT_THRESHOLD = 8.0


def sobel_kernels_5x5() -> tuple[np.ndarray, np.ndarray]:
    """5x5 derivative kernel pair: smoothing x derivative, outer product.

    The x kernel differentiates horizontally and smooths vertically;
    the y kernel is its transpose.  No normalization is applied -- the
    response threshold absorbs the overall scale.
    """
    smooth = np.array([1.0, 4.0, 6.0, 4.0, 1.0])
    deriv = np.array([-1.0, -2.0, 0.0, 2.0, 1.0])
    kern_x = np.outer(smooth, deriv)
    kern_y = kern_x.T.copy()
    return kern_x, kern_y


def gaussian_window_5x5(sigma: float = 1.0) -> np.ndarray:
    """Isotropic Gaussian position weights on [-2, 2]^2, summing to 1."""
    d = np.arange(-2.0, 3.0)
    g = np.exp(-(d[:, None] ** 2 + d[None, :] ** 2) / (2.0 * sigma * sigma))
    return g / g.sum()


@dataclass(frozen=True)
class RefinerConfig:
    """Knobs of the refinement stage.

    n_newest: how many of the patch's most recent cells form the binary
        image (capped by how many cells have fired at all).
    alpha: weight of the squared-trace term in the response.
    sigma: width of the Gaussian position weighting.
    threshold: response value a corner must strictly exceed.
    """

    n_newest: int = 25
    alpha: float = 0.04
    sigma: float = 1.0
    threshold: float = DEFAULT_THRESHOLD
    kern_x: np.ndarray = field(default_factory=lambda: sobel_kernels_5x5()[0])
    kern_y: np.ndarray = field(default_factory=lambda: sobel_kernels_5x5()[1])

    def __post_init__(self) -> None:
        if not 1 <= self.n_newest <= PATCH_SIZE * PATCH_SIZE:
            raise ValueError(f"n_newest must be in [1, 81], got {self.n_newest}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.kern_x.shape != (5, 5) or self.kern_y.shape != (5, 5):
            raise ValueError("derivative kernels must be 5x5")
        if not np.array_equal(self.kern_x.T, self.kern_y):
            raise ValueError("kern_y must be the transpose of kern_x")

    @property
    def weights(self) -> np.ndarray:
        return gaussian_window_5x5(self.sigma)


@dataclass(frozen=True)
class BinaryPatch:
    """0/1 image of a patch's most recent cells."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        if self.bits.shape != (PATCH_SIZE, PATCH_SIZE):
            raise ValueError(f"binary patch must be 9x9, got {self.bits.shape}")


@dataclass(frozen=True)
class GradientMoments:
    """Weighted gradient second moments (a, b, c) of a binary patch."""

    a: float
    b: float
    c: float


def binarize(patch: LocalPatch, n_newest: int = 25) -> BinaryPatch:
    """Mark the n_newest most recent cells of a timestamp patch.

    Timestamp ties are broken row-major: the earlier cell wins.  If the
    patch has fewer than n_newest cells that ever fired, exactly those
    cells are marked.
    """
    out = np.empty((PATCH_SIZE, PATCH_SIZE), dtype=np.float64)
    _kernels.binarize_patch(
        np.ascontiguousarray(patch.values, dtype=np.int64), n_newest, out
    )
    return BinaryPatch(bits=out.astype(np.uint8))


def moments(bp: BinaryPatch, cfg: RefinerConfig = RefinerConfig()) -> GradientMoments:
    """Weighted gradient moments of a binary patch.

    Gradients are evaluated at the 25 positions where the 5x5 kernels
    fit entirely inside the patch; each position is weighted by the
    Gaussian window (normalized to sum 1) at its offset from center.
    """
    a, b, c = _kernels.window_moments(
        bp.bits.astype(np.float64),
        np.ascontiguousarray(cfg.kern_x, dtype=np.float64),
        np.ascontiguousarray(cfg.kern_y, dtype=np.float64),
        cfg.weights,
    )
    if __debug__:
        # The moment matrix is PSD up to float rounding.
        scale = max(a * b, 1.0)
        assert a >= 0.0 and b >= 0.0, (a, b)
        assert a * b - c * c >= -1e-9 * scale, (a, b, c)
    return GradientMoments(a=a, b=b, c=c)


def score(m: GradientMoments, alpha: float = 0.04) -> float:
    """Corner response: det of the moment matrix minus alpha * trace^2."""
    return (m.a * m.b - m.c * m.c) - alpha * (m.a + m.b) ** 2


def refine(
    patch: LocalPatch, cfg: RefinerConfig = RefinerConfig()
) -> tuple[bool, float]:
    """Full refinement of one patch: binarize, take moments, score.

    Returns (is_corner, response); a corner must strictly exceed the
    threshold.
    """
    bp = binarize(patch, cfg.n_newest)
    m = moments(bp, cfg)
    s = score(m, cfg.alpha)
    return s > cfg.threshold, s
