"""Exception hierarchy shared by every bluestego module."""


class StegoError(Exception):
    """Base class for all errors raised by bluestego."""


# image loading / saving

class ImageFormatError(StegoError):
    """The bytes could not be decoded as a supported lossless RGB image."""


class MalformedHeaderError(ImageFormatError):
    pass


class TruncatedDataError(ImageFormatError):
    pass


class UnsupportedDepthError(ImageFormatError):
    pass


class UnsupportedColorTypeError(ImageFormatError):
    pass


class LossyFormatError(ImageFormatError):
    """Raised for JPEG and other formats that would destroy hidden bytes."""


class PixelIndexError(StegoError, IndexError):
    pass


# codecs

class CapacityExceededError(StegoError):
    def __init__(self, needed: int, available: int, unit: str = "bytes"):
        super().__init__(f"payload needs {needed} {unit} but the carrier holds {available}")
        self.needed = needed
        self.available = available


class TerminatorInPayloadError(StegoError, ValueError):
    def __init__(self, offset: int, what: str = "segment"):
        super().__init__(f"{what} contains the terminator byte 0x00 at offset {offset}")
        self.offset = offset
        self.what = what


class KeyMismatchError(StegoError):
    def __init__(self):
        super().__init__("Key is not matching")


class MissingTerminatorError(StegoError):
    pass


class DeclaredLengthError(StegoError):
    """An LSB length header claims more bytes than the carrier can hold."""


# metrics

class DimensionMismatchError(StegoError, ValueError):
    pass
