"""Lossless 24-bit RGB images: in-memory model plus PPM (P6) and PNG codecs.

Channels are stored in a ``(height, width, 3)`` uint8 array whose last axis is
always red, green, blue. File byte order is handled entirely by the loaders
and savers, so callers address channels by name via :data:`RED`,
:data:`GREEN` and :data:`BLUE`.
"""

from __future__ import annotations

import io
import re
import struct
import warnings
from os import PathLike
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image

from .errors import (
    ImageFormatError,
    LossyFormatError,
    MalformedHeaderError,
    PixelIndexError,
    TruncatedDataError,
    UnsupportedColorTypeError,
    UnsupportedDepthError,
)

RED, GREEN, BLUE = 0, 1, 2
CHANNEL_NAMES = ("red", "green", "blue")

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
FORMATS = ("ppm", "png")
_FORMAT_ALIASES = {"ppm": "ppm", "ppm-p6": "ppm", "p6": "ppm", "pnm": "ppm", "png": "png"}
_SUFFIXES = {".ppm": "ppm", ".pnm": "ppm", ".png": "png"}
_LOSSY_SUFFIXES = {".jpg", ".jpeg", ".jpe", ".jfif", ".webp", ".heic", ".avif"}

PathType = Union[str, PathLike]


class RgbImage:
    """An immutable grid of 8-bit (red, green, blue) pixels in row-major order."""

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.asarray(data)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected an array of shape (height, width, 3), got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("width and height must be positive")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError(f"channel values must be integers, got dtype {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("channel values must lie in [0, 255]")
        arr = np.array(arr, dtype=np.uint8, copy=True, order="C")
        arr.flags.writeable = False
        self._data = arr

    @classmethod
    def from_pixels(cls, width: int, height: int, pixels) -> "RgbImage":
        """Build an image from a flat row-major sequence of ``(r, g, b)`` triples."""
        arr = np.asarray(list(pixels), dtype=np.int64)
        if arr.shape != (width * height, 3):
            raise ValueError(f"expected {width * height} RGB triples, got array of shape {arr.shape}")
        return cls(arr.reshape(height, width, 3))

    @classmethod
    def filled(cls, width: int, height: int, rgb=(0, 0, 0)) -> "RgbImage":
        arr = np.empty((height, width, 3), dtype=np.uint8)
        arr[...] = rgb
        return cls(arr)

    @property
    def array(self) -> np.ndarray:
        """Read-only ``(height, width, 3)`` view of the channel values."""
        return self._data

    @property
    def width(self) -> int:
        return self._data.shape[1]

    @property
    def height(self) -> int:
        return self._data.shape[0]

    @property
    def size(self) -> tuple[int, int]:
        return self.width, self.height

    @property
    def num_pixels(self) -> int:
        return self.width * self.height

    @property
    def pixels(self) -> list[tuple[int, int, int]]:
        return [tuple(int(v) for v in px) for px in self._data.reshape(-1, 3)]

    def pixel(self, i: int) -> tuple[int, int, int]:
        y, x = self._coords(i)
        r, g, b = self._data[y, x]
        return int(r), int(g), int(b)

    def plane(self, channel: int) -> np.ndarray:
        """Flat row-major read-only view of one channel."""
        return self._data[:, :, channel].reshape(-1)

    def with_plane(self, channel: int, values) -> "RgbImage":
        """Return a copy whose ``channel`` plane is replaced by ``values`` (flat, row-major)."""
        arr = self._data.copy()
        arr[:, :, channel] = np.asarray(values, dtype=np.uint8).reshape(self.height, self.width)
        return RgbImage(arr)

    def read_blue(self, i: int) -> int:
        y, x = self._coords(i)
        return int(self._data[y, x, BLUE])

    def write_blue(self, i: int, value: int) -> "RgbImage":
        """Return a copy with the blue field of pixel ``i`` set to ``value``."""
        y, x = self._coords(i)
        if not 0 <= value <= 255:
            raise ValueError(f"blue value {value} outside [0, 255]")
        arr = self._data.copy()
        arr[y, x, BLUE] = value
        return RgbImage(arr)

    def _coords(self, i: int) -> tuple[int, int]:
        if not 0 <= i < self.num_pixels:
            raise PixelIndexError(f"pixel index {i} out of range for {self.width}x{self.height} image")
        return divmod(i, self.width)

    def __eq__(self, other):
        if not isinstance(other, RgbImage):
            return NotImplemented
        return self._data.shape == other._data.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        return hash((self._data.shape, self._data.tobytes()))

    def __repr__(self):
        return f"RgbImage(width={self.width}, height={self.height})"


def read_blue(img: RgbImage, i: int) -> int:
    return img.read_blue(i)


def write_blue(img: RgbImage, i: int, value: int) -> RgbImage:
    return img.write_blue(i, value)


def normalize_format(fmt: str) -> str:
    try:
        return _FORMAT_ALIASES[fmt.lower()]
    except KeyError:
        if fmt.lower() in {"jpg", "jpeg", "webp"}:
            raise LossyFormatError(f"{fmt} is lossy and cannot carry hidden data") from None
        raise ImageFormatError(f"unknown image format {fmt!r}; expected one of {FORMATS}") from None


# PPM P6

_WS = b" \t\n\r\x0b\x0c"


def _ppm_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c in _WS and c:
            pos += 1
        elif c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos:pos + 1] not in _WS and data[pos:pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def decode_ppm(data: bytes) -> RgbImage:
    if len(data) < 2 or data[:2] != b"P6":
        raise MalformedHeaderError("not a binary PPM file (missing 'P6' magic)")
    pos = 2
    fields = []
    for name in ("width", "height", "maxval"):
        tok, pos = _ppm_token(data, pos)
        if not re.fullmatch(rb"[0-9]+", tok):
            raise MalformedHeaderError(f"PPM header: bad or missing {name} field {tok!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"PPM header: non-positive dimensions {width}x{height}")
    if not 0 < maxval < 65536:
        raise MalformedHeaderError(f"PPM header: maxval {maxval} outside 1..65535")
    if maxval != 255:
        raise UnsupportedDepthError(f"PPM maxval {maxval} unsupported; only 8-bit (maxval 255) images")
    if pos >= len(data) or data[pos:pos + 1] not in _WS:
        raise MalformedHeaderError("PPM header: missing whitespace after maxval")
    pos += 1
    need = width * height * 3
    body = data[pos:pos + need]
    if len(body) < need:
        raise TruncatedDataError(f"PPM body holds {len(body)} bytes, expected {need}")
    arr = np.frombuffer(body, dtype=np.uint8).reshape(height, width, 3)
    return RgbImage(arr)


def encode_ppm(img: RgbImage) -> bytes:
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.array.tobytes()


# PNG

def _png_ihdr(data: bytes) -> tuple[int, int, int, int]:
    if data[:8] != PNG_SIGNATURE:
        raise MalformedHeaderError("not a PNG file (bad signature)")
    if len(data) < 33:
        raise MalformedHeaderError("PNG too short to contain an IHDR chunk")
    length, ctype = struct.unpack(">I4s", data[8:16])
    if ctype != b"IHDR" or length != 13:
        raise MalformedHeaderError("PNG does not start with a valid IHDR chunk")
    width, height, depth, color_type = struct.unpack(">IIBB", data[16:26])
    return width, height, depth, color_type


def decode_png(data: bytes) -> RgbImage:
    width, height, depth, color_type = _png_ihdr(data)
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"PNG header: non-positive dimensions {width}x{height}")
    if color_type not in (2, 6):
        raise UnsupportedColorTypeError(
            f"PNG color type {color_type} unsupported; only truecolor (2) or truecolor+alpha (6)")
    if depth != 8:
        raise UnsupportedDepthError(f"PNG bit depth {depth} unsupported; only 8-bit channels")
    try:
        with Image.open(io.BytesIO(data)) as im:
            im.load()
            arr = np.asarray(im)
            mode = im.mode
    except (OSError, SyntaxError, ValueError) as exc:
        raise TruncatedDataError(f"PNG pixel data could not be decoded: {exc}") from exc
    if mode == "RGBA":
        warnings.warn("PNG alpha channel stripped; image treated as RGB", stacklevel=3)
        arr = arr[:, :, :3]
    elif mode != "RGB":
        raise UnsupportedColorTypeError(f"PNG decoded to unexpected mode {mode}")
    return RgbImage(arr)


def encode_png(img: RgbImage) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(np.ascontiguousarray(img.array)).save(buf, format="PNG")
    return buf.getvalue()


def load_image(data: bytes, format: str) -> RgbImage:
    """Decode ``data`` as ``format`` ("ppm"/"ppm-p6" or "png")."""
    fmt = normalize_format(format)
    if not data:
        raise MalformedHeaderError("empty input")
    return decode_ppm(data) if fmt == "ppm" else decode_png(data)


def save_image(img: RgbImage, format: str) -> bytes:
    fmt = normalize_format(format)
    return encode_ppm(img) if fmt == "ppm" else encode_png(img)


def sniff_format(data: bytes) -> str:
    if data[:2] == b"P6":
        return "ppm"
    if data[:8] == PNG_SIGNATURE:
        return "png"
    if data[:3] == b"\xff\xd8\xff":
        raise LossyFormatError("JPEG input is lossy and cannot carry hidden data")
    if not data:
        raise MalformedHeaderError("empty input")
    raise MalformedHeaderError("unrecognized image format (expected binary PPM or PNG)")


def format_for_path(path: PathType) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in _LOSSY_SUFFIXES:
        raise LossyFormatError(f"refusing to write lossy format {suffix}")
    try:
        return _SUFFIXES[suffix]
    except KeyError:
        raise ImageFormatError(f"cannot infer image format from {str(path)!r}; use .ppm or .png") from None


def read_image_file(path: PathType, format: str | None = None) -> RgbImage:
    data = Path(path).read_bytes()
    return load_image(data, format or sniff_format(data))


def write_image_file(img: RgbImage, path: PathType, format: str | None = None) -> None:
    fmt = normalize_format(format) if format else format_for_path(path)
    Path(path).write_bytes(save_image(img, fmt))
