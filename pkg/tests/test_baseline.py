import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bluestego.baseline import LsbConfig, lsb_capacity, lsb_capacity_bits, lsb_embed, lsb_extract
from bluestego.errors import CapacityExceededError, DeclaredLengthError
from bluestego.image import RgbImage


def oracle_embed(cover: RgbImage, k: int, msg: bytes) -> list[tuple[int, int, int]]:
    """Bit-by-bit reference: walk pixels, then b, g, r; write bits MSB-first into the low k bits."""
    bits = []
    for byte in len(msg).to_bytes(4, "big") + msg:
        bits += [(byte >> (7 - j)) & 1 for j in range(8)]
    out = []
    pos = 0
    for r, g, b in cover.pixels:
        px = {"r": r, "g": g, "b": b}
        for ch in "bgr":
            for j in range(k):
                if pos < len(bits):
                    bit_place = k - 1 - j
                    px[ch] = (px[ch] & ~(1 << bit_place)) | (bits[pos] << bit_place)
                    pos += 1
        out.append((px["r"], px["g"], px["b"]))
    return out


covers = st.tuples(st.integers(1, 9), st.integers(1, 9)).flatmap(
    lambda wh: arrays(np.uint8, (wh[1], wh[0], 3))
).map(RgbImage)


@pytest.mark.parametrize("w, h, k, bits, payload", [
    (512, 512, 1, 786432, 98300),
    (1, 1, 3, 9, 0),
    (2, 2, 2, 24, 0),
    (4, 4, 3, 144, 14),
])
def test_capacity(w, h, k, bits, payload):
    img = RgbImage.filled(w, h)
    assert lsb_capacity_bits(img, LsbConfig(k)) == bits
    assert lsb_capacity(img, LsbConfig(k)) == payload


def test_config_validation():
    for bad in (0, 4, 8):
        with pytest.raises(ValueError):
            LsbConfig(bad)
    with pytest.raises(ValueError):
        LsbConfig(1, (0, 0, 1))


def test_single_bit_set():
    # first channel byte visited is blue of pixel 0; its header bit is 0, so bit 1 lands later
    cover = RgbImage.filled(6, 6, (0b11001000, 0b11001000, 0b11001000))
    stego = lsb_embed(cover, LsbConfig(1), b"\xff")
    # bits 32.. are message bits (all ones); channel index 32 is pixel 10, green
    assert stego.pixel(10)[1] == 0b11001001


def test_k3_low_bits_replaced():
    cover = RgbImage.filled(4, 4, (0b11101001, 0b11101001, 0b11101001))
    stego = lsb_embed(cover, LsbConfig(3), b"")
    assert stego.pixel(0)[2] == 0b11101000


def test_empty_message_touches_only_header_bits():
    cover = RgbImage.filled(8, 8, (255, 255, 255))
    for k in (1, 2, 3):
        stego = lsb_embed(cover, LsbConfig(k), b"")
        changed = int((stego.array != cover.array).sum())
        assert changed == -(-32 // k)
        assert lsb_extract(stego, LsbConfig(k)) == b""


def test_round_trip_hello():
    cover = RgbImage.filled(10, 10, (77, 88, 99))
    assert lsb_extract(lsb_embed(cover, LsbConfig(1), b"hello"), LsbConfig(1)) == b"hello"


def test_all_zero_image_decodes_empty():
    assert lsb_extract(RgbImage.filled(6, 6), LsbConfig(1)) == b""


def test_capacity_exceeded_and_bad_header():
    cover = RgbImage.filled(4, 4)
    with pytest.raises(CapacityExceededError):
        lsb_embed(cover, LsbConfig(1), b"abc")
    with pytest.raises(DeclaredLengthError):
        lsb_extract(RgbImage.filled(6, 6, (255, 255, 255)), LsbConfig(1))
    with pytest.raises(DeclaredLengthError):
        lsb_extract(RgbImage.filled(2, 2), LsbConfig(2))


@settings(max_examples=150, deadline=None)
@given(covers, st.sampled_from([1, 2, 3]), st.data())
def test_matches_bitwise_oracle_and_round_trips(cover, k, data):
    cfg = LsbConfig(k)
    if lsb_capacity_bits(cover, cfg) < 32:
        with pytest.raises(CapacityExceededError):
            lsb_embed(cover, cfg, b"")
        return
    msg = data.draw(st.binary(max_size=lsb_capacity(cover, cfg)))
    stego = lsb_embed(cover, cfg, msg)
    assert stego.pixels == oracle_embed(cover, k, msg)
    assert lsb_extract(stego, cfg) == msg
    diff = np.abs(stego.array.astype(int) - cover.array.astype(int))
    assert diff.max(initial=0) <= 2 ** k - 1
    assert np.array_equal(stego.array >> k, cover.array >> k)


def _allowed(cover, k, n):
    allowed = np.zeros((cover.num_pixels, 3), dtype=bool)
    for s in range(-(-(32 + 8 * n) // k)):
        allowed[s // 3, (2, 1, 0)[s % 3]] = True
    return allowed.reshape(cover.height, cover.width, 3)


@settings(max_examples=60, deadline=None)
@given(covers, st.sampled_from([1, 2, 3]), st.data())
def test_changed_positions_depend_only_on_length(cover, k, data):
    cfg = LsbConfig(k)
    if lsb_capacity_bits(cover, cfg) < 32:
        with pytest.raises(CapacityExceededError):
            lsb_embed(cover, cfg, b"")
        return
    n = data.draw(st.integers(0, lsb_capacity(cover, cfg)))
    allowed = _allowed(cover, k, n)
    for _ in range(2):
        msg = data.draw(st.binary(min_size=n, max_size=n))
        stego = lsb_embed(cover, cfg, msg)
        xor = stego.array ^ cover.array
        assert not xor[~allowed].any()
        assert not (xor & ~np.uint8((1 << k) - 1)).any()
