"""Seeded fidelity comparison between the blue-channel scheme and LSB-k."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import baseline, codec
from .image import RgbImage
from .metrics import fidelity_report, format_psnr

FIRST_COMPONENT = "first-component"
SCHEMES = (FIRST_COMPONENT, "lsb1", "lsb2", "lsb3")

# Lena 512x512 PSNR values (dB) published alongside the blue-channel scheme.
# Only the first-component and LSB3 rows correspond to schemes implemented here.
REFERENCE_PSNR = {
    "lsb3": 37.92,
    "pvd": 41.48,
    "lie-chang": 37.53,
    "jae-gil-yu": 38.98,
    FIRST_COMPONENT: 46.11,
}
REFERENCE_TOLERANCE_DB = 1.0

CSV_COLUMNS = ("scheme", "payload_len", "mse", "rmse", "psnr_db", "changed_r", "changed_g", "changed_b")


def lsb_config(scheme: str) -> baseline.LsbConfig:
    if not scheme.startswith("lsb"):
        raise ValueError(f"{scheme} is not an LSB scheme")
    return baseline.LsbConfig(k=int(scheme[3:]))


def check_scheme(scheme: str) -> str:
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")
    return scheme


def scheme_capacity(scheme: str, cover: RgbImage, key: bytes = b"") -> int:
    if check_scheme(scheme) == FIRST_COMPONENT:
        return codec.capacity(cover, key)
    return baseline.lsb_capacity(cover, lsb_config(scheme))


def embed_with(scheme: str, cover: RgbImage, msg: bytes, key: bytes = b"") -> RgbImage:
    if check_scheme(scheme) == FIRST_COMPONENT:
        return codec.embed(cover, key, msg)
    return baseline.lsb_embed(cover, lsb_config(scheme), msg)


def random_payload(length: int, seed: int, trial: int = 0) -> bytes:
    """Uniform bytes in 1..255, fixed by ``(seed, length, trial)`` alone."""
    rng = np.random.default_rng([seed, length, trial])
    return rng.integers(1, 256, size=length, dtype=np.uint8).tobytes()


def synthetic_cover(width: int = 512, height: int = 512, seed: int = 0) -> RgbImage:
    """A smooth, photo-like test card: gradients, low-frequency waves, mild noise."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    u, v = xx / max(width - 1, 1), yy / max(height - 1, 1)
    phase = rng.uniform(0, 2 * np.pi, size=3)
    planes = [
        40 + 150 * u + 30 * np.sin(2 * np.pi * (1.5 * v) + phase[0]),
        60 + 120 * v + 35 * np.sin(2 * np.pi * (u + v) + phase[1]),
        90 + 80 * (1 - u) * v + 40 * np.cos(2 * np.pi * (2 * u) + phase[2]),
    ]
    arr = np.stack(planes, axis=-1) + rng.normal(0, 4.0, size=(height, width, 3))
    return RgbImage(np.clip(np.rint(arr), 0, 255).astype(np.uint8))


@dataclass(frozen=True)
class ComparisonRow:
    """One (scheme, payload length) cell; metric fields are trial means."""

    scheme: str
    payload_len: int
    psnr_db: Optional[float]
    mse: Optional[float]
    rmse: Optional[float] = None
    changed_r: float = 0
    changed_g: float = 0
    changed_b: float = 0
    trials: int = 1
    status: str = "ok"

    @property
    def changed_samples(self) -> float:
        return self.changed_r + self.changed_g + self.changed_b

    @property
    def over_capacity(self) -> bool:
        return self.status == "capacity"


def _mean(values: Sequence[float]) -> float:
    if any(math.isinf(v) for v in values):
        return math.inf
    return math.fsum(values) / len(values)


def compare_cell(cover: RgbImage, scheme: str, length: int, seed: int,
                 trials: int = 1, key: bytes = b"") -> ComparisonRow:
    if length > scheme_capacity(scheme, cover, key):
        return ComparisonRow(scheme, length, None, None, trials=trials, status="capacity")
    reports = []
    for t in range(trials):
        stego = embed_with(scheme, cover, random_payload(length, seed, t), key)
        reports.append(fidelity_report(cover, stego))
    if trials == 1:
        r = reports[0]
        return ComparisonRow(scheme, length, r.psnr_db, r.mse, r.rmse, r.changed_r, r.changed_g, r.changed_b)
    return ComparisonRow(
        scheme,
        length,
        psnr_db=_mean([r.psnr_db for r in reports]),
        mse=_mean([r.mse for r in reports]),
        rmse=_mean([r.rmse for r in reports]),
        changed_r=_mean([r.changed_r for r in reports]),
        changed_g=_mean([r.changed_g for r in reports]),
        changed_b=_mean([r.changed_b for r in reports]),
        trials=trials,
    )


def compare(cover: RgbImage, lengths: Iterable[int], schemes: Iterable[str] = SCHEMES, seed: int = 0,
            trials: int = 1, key: bytes = b"", workers: int = 1) -> list[ComparisonRow]:
    """Evaluate every (scheme, length) cell; rows come back ordered by scheme, then length."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    schemes = list(dict.fromkeys(check_scheme(s) for s in schemes))
    lengths = sorted(set(int(n) for n in lengths))
    if any(n < 0 for n in lengths):
        raise ValueError("payload lengths must be non-negative")
    cells = [(s, n) for s in schemes for n in lengths]

    def run(cell):
        return compare_cell(cover, cell[0], cell[1], seed, trials, key)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, cells))
    return [run(c) for c in cells]


def closest_to_reference(rows: Iterable[ComparisonRow], scheme: str = FIRST_COMPONENT,
                         target: Optional[float] = None) -> Optional[ComparisonRow]:
    target = REFERENCE_PSNR[scheme] if target is None else target
    finite = [r for r in rows if r.scheme == scheme and r.psnr_db is not None and math.isfinite(r.psnr_db)]
    if not finite:
        return None
    return min(finite, key=lambda r: (abs(r.psnr_db - target), r.payload_len))


def _fmt(value, places):
    if value is None:
        return "capacity"
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return f"{value:.{places}f}"


def _fmt_count(value, trials):
    return str(int(value)) if trials == 1 else f"{value:.2f}"


def row_fields(row: ComparisonRow) -> list[str]:
    if row.over_capacity:
        return [row.scheme, str(row.payload_len)] + ["capacity"] * 6
    return [
        row.scheme,
        str(row.payload_len),
        _fmt(row.mse, 6),
        _fmt(row.rmse, 6),
        format_psnr(row.psnr_db),
        _fmt_count(row.changed_r, row.trials),
        _fmt_count(row.changed_g, row.trials),
        _fmt_count(row.changed_b, row.trials),
    ]


def to_csv(rows: Sequence[ComparisonRow]) -> str:
    """CSV text; a trailing ``trials`` column appears only for multi-trial runs."""
    multi = any(r.trials > 1 for r in rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(CSV_COLUMNS) + (["trials"] if multi else []))
    for r in rows:
        w.writerow(row_fields(r) + ([str(r.trials)] if multi else []))
    return buf.getvalue()


def to_markdown(rows: Sequence[ComparisonRow]) -> str:
    out = ["| " + " | ".join(CSV_COLUMNS) + " |", "|" + "---|" * len(CSV_COLUMNS)]
    out += ["| " + " | ".join(row_fields(r)) + " |" for r in rows]
    return "\n".join(out) + "\n"


def reference_note(rows: Sequence[ComparisonRow]) -> str:
    target = REFERENCE_PSNR[FIRST_COMPONENT]
    best = closest_to_reference(rows)
    if best is None:
        return f"reference {FIRST_COMPONENT} {target} dB: no finite {FIRST_COMPONENT} row to compare\n"
    verdict = "within" if abs(best.psnr_db - target) <= REFERENCE_TOLERANCE_DB else "outside"
    return (f"reference {FIRST_COMPONENT} {target} dB: closest at payload_len={best.payload_len} "
            f"psnr_db={format_psnr(best.psnr_db)} ({verdict} +/-{REFERENCE_TOLERANCE_DB} dB)\n")
