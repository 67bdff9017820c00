"""LSB-k reference codec used as a fidelity baseline.

Channel bytes are visited pixel by pixel in row-major order, blue then green
then red within each pixel. The bit stream is a 32-bit big-endian length
followed by the message, most-significant bit first; each channel byte
takes the next ``k`` bits in its low ``k`` positions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityExceededError, DeclaredLengthError
from .image import BLUE, GREEN, RED, RgbImage

HEADER_BITS = 32
CHANNEL_ORDER = (BLUE, GREEN, RED)


@dataclass(frozen=True)
class LsbConfig:
    k: int = 1
    channel_order: tuple[int, int, int] = CHANNEL_ORDER

    def __post_init__(self):
        if self.k not in (1, 2, 3):
            raise ValueError(f"k must be 1, 2 or 3, got {self.k}")
        if sorted(self.channel_order) != [RED, GREEN, BLUE]:
            raise ValueError("channel_order must be a permutation of (red, green, blue)")


def lsb_capacity_bits(img: RgbImage, cfg: LsbConfig) -> int:
    return img.num_pixels * 3 * cfg.k


def lsb_capacity(img: RgbImage, cfg: LsbConfig) -> int:
    """Payload capacity in bytes after the 4-byte length header."""
    return max(0, lsb_capacity_bits(img, cfg) // 8 - HEADER_BITS // 8)


def _channel_stream(img: RgbImage, cfg: LsbConfig) -> np.ndarray:
    return img.array.reshape(-1, 3)[:, list(cfg.channel_order)].reshape(-1)


def _from_channel_stream(stream: np.ndarray, img: RgbImage, cfg: LsbConfig) -> RgbImage:
    arr = np.empty((img.num_pixels, 3), dtype=np.uint8)
    arr[:, list(cfg.channel_order)] = stream.reshape(-1, 3)
    return RgbImage(arr.reshape(img.height, img.width, 3))


def lsb_embed(cover: RgbImage, cfg: LsbConfig, msg: bytes) -> RgbImage:
    msg = bytes(msg)
    need = HEADER_BITS + 8 * len(msg)
    if len(msg) > lsb_capacity(cover, cfg) or need > lsb_capacity_bits(cover, cfg):
        raise CapacityExceededError(need, lsb_capacity_bits(cover, cfg), "bits")
    k = cfg.k
    framed = len(msg).to_bytes(4, "big") + msg
    bits = np.unpackbits(np.frombuffer(framed, dtype=np.uint8))
    n_full, rem = divmod(bits.size, k)
    weights = (1 << np.arange(k - 1, -1, -1)).astype(np.uint8)

    stream = _channel_stream(cover, cfg).copy()
    mask = np.uint8(0xFF ^ ((1 << k) - 1))
    if n_full:
        values = (bits[: n_full * k].reshape(-1, k) * weights).sum(axis=1).astype(np.uint8)
        stream[:n_full] = (stream[:n_full] & mask) | values
    if rem:
        # leftover bits fill the top of the last k-bit field; the cover keeps the rest
        keep = (1 << (k - rem)) - 1
        tail = int((bits[n_full * k:] * weights[:rem]).sum())
        stream[n_full] = (int(stream[n_full]) & ~((1 << k) - 1 - keep) & 0xFF) | tail
    return _from_channel_stream(stream, cover, cfg)


def _read_bits(stream: np.ndarray, k: int, n_bits: int) -> np.ndarray:
    n_fields = -(-n_bits // k)
    fields = stream[:n_fields]
    shifts = np.arange(k - 1, -1, -1, dtype=np.uint8)
    bits = ((fields[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)
    return bits[:n_bits]


def lsb_extract(stego: RgbImage, cfg: LsbConfig) -> bytes:
    stream = _channel_stream(stego, cfg)
    if lsb_capacity_bits(stego, cfg) < HEADER_BITS:
        raise DeclaredLengthError("carrier too small to hold the 32-bit length header")
    header = np.packbits(_read_bits(stream, cfg.k, HEADER_BITS)).tobytes()
    length = int.from_bytes(header, "big")
    cap = lsb_capacity(stego, cfg)
    if length > cap:
        raise DeclaredLengthError(f"declared length {length} exceeds capacity {cap}; not an LSB-{cfg.k} stego image")
    bits = _read_bits(stream, cfg.k, HEADER_BITS + 8 * length)
    return np.packbits(bits[HEADER_BITS:]).tobytes()
