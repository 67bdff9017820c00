"""Cover/stego fidelity: MSE, RMSE, PSNR and per-channel change counts.

MSE averages the squared difference over every channel sample, i.e. over
``3 * width * height`` values. Squared errors are summed as exact 64-bit
integers before the single division, so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatchError
from .image import RgbImage

MAXPIX = 255.0


@dataclass(frozen=True)
class DiffMask:
    changed_r: int
    changed_g: int
    changed_b: int
    first_index: Optional[int]

    @property
    def counts(self) -> tuple[int, int, int]:
        return self.changed_r, self.changed_g, self.changed_b

    @property
    def total(self) -> int:
        return self.changed_r + self.changed_g + self.changed_b


@dataclass(frozen=True)
class FidelityReport:
    mse: float
    rmse: float
    psnr_db: float
    samples: int
    changed_r: int
    changed_g: int
    changed_b: int

    @property
    def changed(self) -> tuple[int, int, int]:
        return self.changed_r, self.changed_g, self.changed_b

    def as_dict(self) -> dict:
        return {
            "mse": self.mse,
            "rmse": self.rmse,
            "psnr_db": self.psnr_db,
            "samples": self.samples,
            "changed_r": self.changed_r,
            "changed_g": self.changed_g,
            "changed_b": self.changed_b,
        }


def _check(x: RgbImage, y: RgbImage) -> None:
    if x.size != y.size:
        raise DimensionMismatchError(f"image sizes differ: {x.width}x{x.height} vs {y.width}x{y.height}")


def _squared_error_sum(x: RgbImage, y: RgbImage, channel: int | None = None) -> int:
    a, b = x.array, y.array
    if channel is not None:
        a, b = a[:, :, channel], b[:, :, channel]
    d = (a.astype(np.int64) - b.astype(np.int64)).reshape(-1)
    return int(d @ d)


def mse(x: RgbImage, y: RgbImage) -> float:
    _check(x, y)
    return _squared_error_sum(x, y) / (3 * x.num_pixels)


def channel_mse(x: RgbImage, y: RgbImage) -> tuple[float, float, float]:
    """MSE of each plane on its own, in (red, green, blue) order."""
    _check(x, y)
    return tuple(_squared_error_sum(x, y, c) / x.num_pixels for c in range(3))


def psnr_from_mse(value: float, maxpix: float = MAXPIX) -> float:
    if maxpix <= 0:
        raise ValueError("maxpix must be positive")
    if value == 0:
        return math.inf
    return 20.0 * math.log10(maxpix / math.sqrt(value))


def rmse(x: RgbImage, y: RgbImage) -> float:
    return math.sqrt(mse(x, y))


def psnr(x: RgbImage, y: RgbImage, maxpix: float = MAXPIX) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    return psnr_from_mse(mse(x, y), maxpix)


def diff_mask(x: RgbImage, y: RgbImage) -> DiffMask:
    _check(x, y)
    neq = x.array != y.array
    counts = [int(c) for c in neq.reshape(-1, 3).sum(axis=0)]
    hits = np.flatnonzero(neq.reshape(-1, 3).any(axis=1))
    first = int(hits[0]) if hits.size else None
    return DiffMask(counts[0], counts[1], counts[2], first)


def fidelity_report(cover: RgbImage, stego: RgbImage, maxpix: float = MAXPIX) -> FidelityReport:
    m = mse(cover, stego)
    mask = diff_mask(cover, stego)
    return FidelityReport(
        mse=m,
        rmse=math.sqrt(m),
        psnr_db=psnr_from_mse(m, maxpix),
        samples=3 * cover.num_pixels,
        changed_r=mask.changed_r,
        changed_g=mask.changed_g,
        changed_b=mask.changed_b,
    )


def format_psnr(value: float, places: int = 4) -> str:
    return "inf" if math.isinf(value) else f"{value:.{places}f}"

