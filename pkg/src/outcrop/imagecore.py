"""Raster decoding, canonical byte serialization, and joint-image construction.

Every image is held as a height x width x 3 uint8 array (RGB, row-major,
top-to-bottom). The canonical byte stream fed to the compressor is exactly
``array.tobytes()``: interleaved RGB8 scan lines with no header or padding.
Row-major interleaving keeps corresponding scan lines of a left-right joint
image inside one 32 KiB compression window.
"""

import io
from dataclasses import dataclass, field

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CorruptStream, HeightMismatch, UnsupportedFormat

_ACCEPTED_FORMATS = {"PNG", "JPEG"}


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """Decoded RGB raster. ``data`` is (height, width, 3) uint8."""

    data: np.ndarray

    def __post_init__(self):
        if self.data.ndim != 3 or self.data.shape[2] != 3:
            raise ValueError(f"expected (h, w, 3) array, got shape {self.data.shape}")
        if self.data.dtype != np.uint8:
            raise ValueError(f"expected uint8 pixels, got {self.data.dtype}")
        if self.data.shape[0] < 1 or self.data.shape[1] < 1:
            raise ValueError("width and height must be >= 1")
        self.data.setflags(write=False)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def dims(self) -> tuple[int, int]:
        return (self.width, self.height)

    def same_pixels(self, other: "ImageBuffer") -> bool:
        return self.data.shape == other.data.shape and np.array_equal(
            self.data, other.data
        )


@dataclass(frozen=True, eq=False)
class JointImage(ImageBuffer):
    """Left-right juxtaposition of two equal-height sources."""

    provenance: tuple = field(default=("", ""))


def decode(raw: bytes, format_hint: str | None = None) -> ImageBuffer:
    """Decode a PNG or JPEG byte stream to a canonical RGB8 buffer.

    Alpha is dropped, grayscale is expanded to RGB. ``format_hint`` is
    advisory only; the container is sniffed from the bytes.
    """
    try:
        img = Image.open(io.BytesIO(raw))
        fmt = img.format
        if fmt not in _ACCEPTED_FORMATS:
            raise UnsupportedFormat(f"accepted formats are PNG and JPEG, got {fmt}")
        rgb = img.convert("RGB")
        arr = np.asarray(rgb, dtype=np.uint8)
    except UnsupportedFormat:
        raise
    except UnidentifiedImageError as exc:
        raise CorruptStream(f"not a decodable image stream: {exc}") from exc
    except Exception as exc:  # truncated body, bad chunks, ...
        raise CorruptStream(f"image stream failed to decode: {exc}") from exc
    return ImageBuffer(arr.copy())


def encode_png(img: ImageBuffer) -> bytes:
    """Lossless PNG encoding of a buffer (round-trips bit-exactly)."""
    out = io.BytesIO()
    Image.fromarray(np.asarray(img.data)).save(out, format="PNG")
    return out.getvalue()


def serialize(img: ImageBuffer) -> bytes:
    """The exact byte stream the compressor sees: row-major interleaved RGB8."""
    return np.ascontiguousarray(img.data).tobytes()


def juxtapose(left: ImageBuffer, right: ImageBuffer, direction: str = "lr") -> JointImage:
    """Build the joint image of two sources.

    ``lr`` places corresponding scan lines side by side (the studied layout);
    ``tb`` mirrors it with rows and columns swapped, i.e. stacks the two
    images vertically and requires equal widths.
    """
    if direction == "lr":
        if left.height != right.height:
            raise HeightMismatch(
                f"left height {left.height} != right height {right.height}"
            )
        data = np.concatenate([left.data, right.data], axis=1)
    elif direction == "tb":
        if left.width != right.width:
            raise HeightMismatch(
                f"top width {left.width} != bottom width {right.width}"
            )
        data = np.concatenate([left.data, right.data], axis=0)
    else:
        raise ValueError(f"unknown juxtaposition direction {direction!r}")
    return JointImage(data.copy(), provenance=("left", "right"))


def resize_nearest(img: ImageBuffer, w: int, h: int) -> ImageBuffer:
    """Nearest-neighbor resample; resizing to the image's own size is identity.

    Source index for output index i is floor((i + 0.5) * src / dst). Nearest
    neighbor never invents new colors, which matters because interpolated
    pixels would perturb the compressor's dictionary statistics.
    """
    if w < 1 or h < 1:
        raise ValueError("target dimensions must be >= 1")
    if (w, h) == (img.width, img.height):
        return img
    xs = ((np.arange(w) + 0.5) * img.width / w).astype(np.int64)
    ys = ((np.arange(h) + 0.5) * img.height / h).astype(np.int64)
    xs = np.clip(xs, 0, img.width - 1)
    ys = np.clip(ys, 0, img.height - 1)
    return ImageBuffer(img.data[np.ix_(ys, xs)].copy())
