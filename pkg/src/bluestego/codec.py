"""First-component alteration: hide a key and a message in the blue channel.

Every blue byte carries one whole payload byte. Starting from pixel 0 in
row-major order the blue plane receives::

    key bytes | TERMINATOR | message bytes | TERMINATOR

and nothing else in the image is touched. Extraction reads the key segment
back and only releases the message when it equals the receiver's key.

The key is an access gate, not encryption: anyone who reads the blue plane
sees both segments in the clear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityExceededError, KeyMismatchError, MissingTerminatorError, TerminatorInPayloadError
from .image import BLUE, RgbImage

TERMINATOR = 0


@dataclass(frozen=True)
class EmbedLayout:
    """Pixel positions of the two segments and their terminators."""

    key_span: range
    key_term: int
    msg_span: range
    msg_term: int

    @classmethod
    def for_lengths(cls, key_len: int, msg_len: int) -> "EmbedLayout":
        msg_start = key_len + 1
        return cls(range(0, key_len), key_len, range(msg_start, msg_start + msg_len), msg_start + msg_len)

    @property
    def pixels_used(self) -> int:
        return self.msg_term + 1


def capacity(img: RgbImage, key: bytes = b"") -> int:
    """Largest message length (bytes) that ``embed`` accepts for this cover and key."""
    return max(0, img.num_pixels - len(key) - 2)


def validate_segment(data: bytes, what: str = "segment") -> None:
    """Raise :class:`TerminatorInPayloadError` if ``data`` contains a 0x00 byte."""
    offset = bytes(data).find(TERMINATOR)
    if offset >= 0:
        raise TerminatorInPayloadError(offset, what)


def embed(cover: RgbImage, key: bytes, msg: bytes) -> RgbImage:
    key, msg = bytes(key), bytes(msg)
    validate_segment(key, "key")
    validate_segment(msg, "message")
    stream = key + bytes([TERMINATOR]) + msg + bytes([TERMINATOR])
    if len(stream) > cover.num_pixels:
        raise CapacityExceededError(len(stream), cover.num_pixels, "pixels")
    blue = cover.plane(BLUE).copy()
    blue[: len(stream)] = np.frombuffer(stream, dtype=np.uint8)
    return cover.with_plane(BLUE, blue)


def _segments(blue: bytes) -> tuple[int, int]:
    key_term = blue.find(TERMINATOR)
    if key_term < 0:
        raise MissingTerminatorError("no key terminator in the blue channel; not a stego image")
    msg_term = blue.find(TERMINATOR, key_term + 1)
    if msg_term < 0:
        raise MissingTerminatorError("no message terminator in the blue channel; carrier truncated or not a stego image")
    return key_term, msg_term


def extract(stego: RgbImage, key: bytes) -> bytes:
    key = bytes(key)
    validate_segment(key, "key")
    blue = stego.plane(BLUE).tobytes()
    key_term = blue.find(TERMINATOR)
    if key_term < 0:
        raise MissingTerminatorError("no key terminator in the blue channel; not a stego image")
    if blue[:key_term] != key:
        raise KeyMismatchError()
    _, msg_term = _segments(blue)
    return blue[key_term + 1:msg_term]


def detect_layout(stego: RgbImage) -> EmbedLayout:
    """Locate both segments without checking any key."""
    key_term, msg_term = _segments(stego.plane(BLUE).tobytes())
    return EmbedLayout.for_lengths(key_term, msg_term - key_term - 1)
