"""Blue-channel ("first component") image steganography.

The main entry points are :func:`embed` / :func:`extract` for the
blue-channel scheme, :mod:`bluestego.baseline` for LSB-k, and
:mod:`bluestego.metrics` for MSE / RMSE / PSNR.
"""

from .codec import TERMINATOR, EmbedLayout, capacity, detect_layout, embed, extract, validate_segment
from .errors import (
    CapacityExceededError,
    DeclaredLengthError,
    DimensionMismatchError,
    ImageFormatError,
    KeyMismatchError,
    LossyFormatError,
    MalformedHeaderError,
    MissingTerminatorError,
    PixelIndexError,
    StegoError,
    TerminatorInPayloadError,
    TruncatedDataError,
    UnsupportedColorTypeError,
    UnsupportedDepthError,
)
from .image import BLUE, GREEN, RED, RgbImage, load_image, read_image_file, save_image, write_image_file
from .metrics import FidelityReport, diff_mask, fidelity_report, mse, psnr, rmse

__version__ = "0.1.0"
