"""The size oracle: DEFLATE a byte stream and report the compressed length.

The sliding window is fixed at the standard 32 KiB. By default only the raw
DEFLATE payload (RFC 1951) is counted; the optional gzip container adds a
constant header/trailer and exists only for interoperability checks against
external tools.
"""

import zlib
from dataclasses import dataclass

WINDOW_BYTES = 32768  # fixed; not configurable
_WBITS_RAW = -15  # raw DEFLATE, 32 KiB window
_WBITS_GZIP = 31  # gzip wrapper, same window


@dataclass(frozen=True)
class CompressionProfile:
    """DEFLATE parameters held constant for the lifetime of a session."""

    level: int = 6
    container: str = "none"  # "none" counts payload only, "gzip" adds wrapper

    def __post_init__(self):
        if not 1 <= self.level <= 9:
            raise ValueError(f"compression level must be in 1..9, got {self.level}")
        if self.container not in ("none", "gzip"):
            raise ValueError(f"container must be 'none' or 'gzip', got {self.container!r}")

    @property
    def window(self) -> int:
        return WINDOW_BYTES


@dataclass(frozen=True)
class SizeReport:
    input_len: int
    compressed_len: int


def compressed_size(stream: bytes, profile: CompressionProfile | None = None) -> SizeReport:
    """Compress ``stream`` and report its size in bytes.

    Deterministic for a fixed (stream, profile) pair. An empty stream yields
    the codec's minimal block size rather than an error.
    """
    if profile is None:
        profile = CompressionProfile()
    wbits = _WBITS_RAW if profile.container == "none" else _WBITS_GZIP
    enc = zlib.compressobj(profile.level, zlib.DEFLATED, wbits)
    n = len(enc.compress(stream)) + len(enc.flush())
    return SizeReport(input_len=len(stream), compressed_len=n)
