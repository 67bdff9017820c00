import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bluestego.codec import TERMINATOR, EmbedLayout, capacity, detect_layout, embed, extract, validate_segment
from bluestego.errors import (
    CapacityExceededError,
    KeyMismatchError,
    MissingTerminatorError,
    TerminatorInPayloadError,
)
from bluestego.image import BLUE, RgbImage

segment = st.binary(max_size=24).map(lambda b: bytes(x for x in b if x != 0))
covers = st.tuples(st.integers(1, 10), st.integers(1, 10)).flatmap(
    lambda wh: arrays(np.uint8, (wh[1], wh[0], 3))
).map(RgbImage)


def blues(img):
    return list(img.plane(BLUE))


def test_terminator_is_nul():
    assert TERMINATOR == 0


@pytest.mark.parametrize("w, h, key, expected", [
    (512, 512, b"8bytekey", 262134),
    (1, 1, b"", 0),
    (2, 2, b"", 2),
    (1, 3, b"abcdef", 0),
])
def test_capacity(w, h, key, expected):
    assert capacity(RgbImage.filled(w, h), key) == expected


def test_validate_segment():
    assert validate_segment(b"ABC") is None
    assert validate_segment(b"") is None
    with pytest.raises(TerminatorInPayloadError) as ei:
        validate_segment(bytes([65, 0, 67]))
    assert ei.value.offset == 1


def test_embed_letter_a_layout():
    cover = RgbImage.from_pixels(3, 1, [(1, 2, 39), (3, 4, 77), (5, 6, 91)])
    stego = embed(cover, b"", b"A")
    assert blues(stego) == [0, 65, 0]
    assert format(stego.read_blue(1), "08b") == "01000001"
    assert np.array_equal(stego.array[:, :, :2], cover.array[:, :, :2])


def test_paper_three_pixel_example():
    # printed triples read in (blue, green, red) order; only the first blue byte carries 'A'
    printed = [(0b00100111, 0b11101001, 0b11001000),
               (0b00100111, 0b11001000, 0b11101001),
               (0b11001000, 0b00100111, 0b11101001)]
    img = RgbImage.from_pixels(3, 1, [(r, g, b) for b, g, r in printed])
    out = img.write_blue(0, ord("A"))
    assert (out.read_blue(0), *out.pixel(0)[1::-1]) == (0b01000001, 0b11101001, 0b11001000)
    assert out.pixel(1) == img.pixel(1) and out.pixel(2) == img.pixel(2)


def test_embed_key_only():
    cover = RgbImage.filled(3, 1, (9, 9, 9))
    assert blues(embed(cover, b"k", b"")) == [107, 0, 0]


def test_embed_capacity_exceeded():
    with pytest.raises(CapacityExceededError):
        embed(RgbImage.filled(2, 1), b"", b"A")


def test_embed_rejects_terminator_in_inputs():
    cover = RgbImage.filled(8, 8, (255, 255, 255))
    with pytest.raises(TerminatorInPayloadError):
        embed(cover, b"k\x00", b"x")
    with pytest.raises(TerminatorInPayloadError) as ei:
        embed(cover, b"k", b"ab\x00")
    assert ei.value.offset == 2


def test_extract_round_trip_and_mismatch(rng):
    cover = RgbImage(rng.integers(0, 256, (6, 6, 3), dtype=np.uint8))
    stego = embed(cover, b"k", b"AB")
    assert extract(stego, b"k") == b"AB"
    with pytest.raises(KeyMismatchError, match="^Key is not matching$"):
        extract(stego, b"j")
    with pytest.raises(TerminatorInPayloadError):
        extract(stego, b"\x00")


def test_extract_all_255_cover():
    with pytest.raises(MissingTerminatorError):
        extract(RgbImage.filled(5, 5, (255, 255, 255)), b"anything")


def test_extract_missing_message_terminator():
    img = RgbImage.filled(4, 1, (1, 1, 200)).write_blue(1, 0)
    with pytest.raises(MissingTerminatorError):
        extract(img, bytes([200]))


def test_detect_layout():
    cover = RgbImage.filled(4, 4, (255, 255, 255))
    lay = detect_layout(embed(cover, b"k", b"AB"))
    assert lay == EmbedLayout(range(0, 1), 1, range(2, 4), 4)
    empty = detect_layout(embed(cover, b"", b""))
    assert (empty.key_term, empty.msg_term, len(empty.key_span), len(empty.msg_span)) == (0, 1, 0, 0)
    with pytest.raises(MissingTerminatorError):
        detect_layout(cover)


@settings(max_examples=200, deadline=None)
@given(covers, segment, segment)
def test_round_trip_property(cover, key, msg):
    assume(len(key) + len(msg) + 2 <= cover.num_pixels)
    stego = embed(cover, key, msg)
    assert extract(stego, key) == msg
    n = len(key) + len(msg) + 2
    assert np.array_equal(stego.array[:, :, :2], cover.array[:, :, :2])
    assert np.array_equal(stego.plane(BLUE)[n:], cover.plane(BLUE)[n:])
    assert detect_layout(stego) == EmbedLayout.for_lengths(len(key), len(msg))


@settings(max_examples=100, deadline=None)
@given(covers, segment, segment, segment)
def test_key_gating_property(cover, key, other, msg):
    assume(other != key and len(key) + len(msg) + 2 <= cover.num_pixels)
    with pytest.raises(KeyMismatchError):
        extract(embed(cover, key, msg), other)


@settings(max_examples=100, deadline=None)
@given(covers, segment, st.integers(0, 120))
def test_capacity_tightness(cover, key, n):
    msg = b"\x01" * n
    fits = len(key) + n + 2 <= cover.num_pixels
    if cover.num_pixels >= len(key) + 2:
        assert fits == (n <= capacity(cover, key))
    if fits:
        assert extract(embed(cover, key, msg), key) == msg
    else:
        with pytest.raises(CapacityExceededError):
            embed(cover, key, msg)


def test_embed_is_deterministic_and_pure(rng):
    cover = RgbImage(rng.integers(0, 256, (5, 5, 3), dtype=np.uint8))
    snapshot = cover.array.copy()
    a, b = embed(cover, b"key", b"msg"), embed(cover, b"key", b"msg")
    assert a == b
    assert np.array_equal(cover.array, snapshot)
